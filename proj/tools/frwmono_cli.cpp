#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frwmono/frwmodel.hpp"
#include "frwmono/linmono.hpp"
#include "frwmono/oraclequad.hpp"

using namespace frwmono;
using nlohmann::json;

namespace {

constexpr int EXIT_BAD_ARGS = 2;
constexpr int EXIT_NUMERICAL = 3;

cplx parse_cplx(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return cplx(std::stod(s), 0.0);
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

std::string fmt_cplx(cplx z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

// Line-oriented "key = value" config; '#' starts a comment.
std::map<std::string, std::string> load_config(const std::string& file) {
    std::map<std::string, std::string> out;
    std::ifstream in(file);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + file);
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) out[key] = val;
    }
    return out;
}

struct ConfigDefaults {
    std::map<std::string, std::string> kv;

    double num(const char* key, double fb) const {
        auto it = kv.find(key);
        return it == kv.end() ? fb : std::stod(it->second);
    }
    int integer(const char* key, int fb) const {
        auto it = kv.find(key);
        return it == kv.end() ? fb : std::stoi(it->second);
    }
    std::string str(const char* key, std::string fb) const {
        auto it = kv.find(key);
        return it == kv.end() ? fb : it->second;
    }
};

// ---- families as plain doubles for real sweep parameters ----

double mu_dbl(double p, double m) { return -2.0 * m * m / ((p + 1) * (p + 2)); }

double mu_family_dbl(int fam, double p, double m) {
    switch (fam) {
    case 1: return -72.0 * m * m / ((12 * p + 1) * (12 * p + 7));
    case 2: return -m * m / (p * (2 * p - 1));
    case 3: return -8.0 * m * m / ((4 * p + 1) * (4 * p + 3));
    }
    throw Error("unknown mu family");
}

struct SweepCase {
    bool k1 = true; // else k=0
    bool diag = true;
    int family = 0; // mu_i index for k=0 cases
};

SweepCase parse_case(std::string name, const std::string& lambda_family) {
    if (!lambda_family.empty()) {
        if (name != "k0-diag" && name != "k0-open")
            throw CLI::ValidationError("--lambda-family",
                                       "only meaningful with --case k0-diag / k0-open");
        name += "-" + lambda_family;
    }
    SweepCase c;
    if (name == "k1") return c;
    c.k1 = false;
    if (name.rfind("k0-diag-mu", 0) == 0)
        c.diag = true;
    else if (name.rfind("k0-open-mu", 0) == 0)
        c.diag = false;
    else
        throw CLI::ValidationError("--case", "unknown case " + name);
    c.family = name.back() - '0';
    if (c.family < 1 || c.family > 3)
        throw CLI::ValidationError("--case", "family index must be 1..3");
    return c;
}

struct SweepRow {
    double p = 0.0;
    bool ok = false;
    std::string error;
    std::vector<double> dev, comm;
};

struct LoopSet {
    Eigen::VectorXcd ivp;
    PolygonalPath plus, minus;
    std::vector<cplx> singularities;
};

LoopSet case_loops(bool k1_case, cplx Lambda) {
    LoopSet ls;
    if (k1_case) {
        const ParticularSolution sol = sol1(Lambda);
        ls.ivp = sol.ivp;
        ls.plus = hexagon_path(+1);
        ls.minus = hexagon_path(-1);
        ls.singularities = sol.singularities;
    } else {
        const ParticularSolution sol = sol2(Lambda);
        ls.ivp = sol.ivp;
        ls.plus = spoon_path(sol.t_star, +1);
        ls.minus = spoon_path(sol.t_star, -1);
        ls.singularities = sol.singularities;
    }
    return ls;
}

SweepRow sweep_point(const SweepCase& sc, double p, double m, int kmax,
                     const IntegratorConfig& cfg) {
    SweepRow row;
    row.p = p;
    try {
        cplx Lambda, lambda;
        if (sc.k1) {
            Lambda = lambda = cplx(mu_dbl(p, m), 0.0);
        } else {
            lambda = cplx(mu_family_dbl(sc.family, p, m), 0.0);
            Lambda = sc.diag ? lambda : cplx(-m * m, 0.0);
        }
        if (!std::isfinite(Lambda.real()) || !std::isfinite(lambda.real()))
            throw PoleInFamily("family value diverges at this p");

        FrwParams prm{sc.k1 ? 1 : 0, Lambda, lambda, m};
        const PolyVectorField X = frw_field(prm);
        const LoopSet ls = case_loops(sc.k1, Lambda);

        const BlockFundamental M1 = monodromy(X, ls.ivp, ls.plus, kmax, cfg, ls.singularities);
        const BlockFundamental M2 = monodromy(X, ls.ivp, ls.minus, kmax, cfg, ls.singularities);
        for (int k = 1; k <= kmax; ++k) {
            const Eigen::MatrixXcd A = restrict_order(M1, k);
            const Eigen::MatrixXcd B = restrict_order(M2, k);
            row.dev.push_back(sup_norm(A - Eigen::MatrixXcd::Identity(A.rows(), A.cols())));
            row.comm.push_back(sup_norm(commutator(A, B)));
        }
        row.ok = true;
    } catch (const std::exception& e) {
        row.error = e.what();
        row.dev.clear();
        row.comm.clear();
    }
    return row;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, int kmax,
                     const std::string& provenance) {
    out << "# " << provenance << "\n";
    out << "p";
    for (int k = 1; k <= kmax; ++k) out << ",dev_k" << k;
    for (int k = 1; k <= kmax; ++k) out << ",comm_k" << k;
    out << ",error\n";
    out.precision(17);
    for (const auto& r : rows) {
        out << r.p;
        if (r.ok) {
            for (double v : r.dev) out << ',' << v;
            for (double v : r.comm) out << ',' << v;
            out << ",\n";
        } else {
            for (int k = 0; k < 2 * kmax; ++k) out << ',';
            out << ',' << r.error << '\n';
        }
    }
}

// scales: optional per-series factors from the config ("scale-comm_k2 = 0.577"),
// applied to the chart only; CSV output stays raw.
void write_sweep_svg(std::ostream& out, const std::vector<SweepRow>& rows, int kmax,
                     const std::map<std::string, double>& scales) {
    const int W = 860, H = 540, ML = 70, MR = 170, MT = 30, MB = 50;
    const auto scale_of = [&](const std::string& name) {
        auto it = scales.find(name);
        return it == scales.end() ? 1.0 : it->second;
    };
    double pmin = 1e300, pmax = -1e300;
    double lo = 0.0, hi = -16.0; // log10 range
    for (const auto& r : rows) {
        if (!r.ok) continue;
        pmin = std::min(pmin, r.p);
        pmax = std::max(pmax, r.p);
        for (int k = 1; k <= kmax; ++k) {
            for (double v : {r.comm[k - 1] * scale_of("comm_k" + std::to_string(k)),
                             r.dev[k - 1] * scale_of("dev_k" + std::to_string(k))}) {
                const double l = std::log10(std::max(v, 1e-16));
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
        }
    }
    if (pmax <= pmin) { pmax = pmin + 1; }
    if (hi <= lo) hi = lo + 1;
    auto xmap = [&](double p) { return ML + (p - pmin) / (pmax - pmin) * (W - ML - MR); };
    auto ymap = [&](double v) {
        const double l = std::log10(std::max(v, 1e-16));
        return H - MB - (l - lo) / (hi - lo) * (H - MT - MB);
    };
    const char* palette[5] = {"#1b6ca8", "#c23b22", "#2e8540", "#8a5fbf", "#b8860b"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
        << H - MB << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
        << "\" stroke=\"black\"/>\n";
    for (int l = static_cast<int>(std::ceil(lo)); l <= static_cast<int>(std::floor(hi)); l += 4) {
        const double y = H - MB - (l - lo) / (hi - lo) * (H - MT - MB);
        out << "<text x=\"8\" y=\"" << y + 4 << "\" font-size=\"11\">1e" << l << "</text>\n";
        out << "<line x1=\"" << ML - 4 << "\" y1=\"" << y << "\" x2=\"" << ML << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
    }
    out << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 12
        << "\" font-size=\"12\">p</text>\n";
    auto series = [&](auto getter, int k, const char* color, const char* dash,
                      const std::string& name) {
        const double s = scale_of(name);
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\"";
        if (dash[0]) out << " stroke-dasharray=\"" << dash << "\"";
        out << " points=\"";
        for (const auto& r : rows) {
            if (!r.ok) continue;
            out << xmap(r.p) << ',' << ymap(getter(r, k) * s) << ' ';
        }
        out << "\"/>\n";
    };
    for (int k = 1; k <= kmax; ++k) {
        series([](const SweepRow& r, int kk) { return r.comm[kk - 1]; }, k,
               palette[(k - 1) % 5], "", "comm_k" + std::to_string(k));
        series([](const SweepRow& r, int kk) { return r.dev[kk - 1]; }, k,
               palette[(k - 1) % 5], "4 3", "dev_k" + std::to_string(k));
    }
    for (int k = 1; k <= kmax; ++k) {
        const int y = MT + 18 * k;
        const std::string name = "comm_k" + std::to_string(k);
        out << "<line x1=\"" << W - MR + 10 << "\" y1=\"" << y << "\" x2=\"" << W - MR + 34
            << "\" y2=\"" << y << "\" stroke=\"" << palette[(k - 1) % 5] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - MR + 40 << "\" y=\"" << y + 4 << "\" font-size=\"11\">" << name;
        if (scales.count(name)) out << " (x" << scales.at(name) << ")";
        out << " (dev dashed)</text>\n";
    }
    out << "</svg>\n";
}

int cmd_sweep(const std::string& case_name, const std::string& lambda_family, double p_min,
              double p_max, double p_step, double m, int kmax, const IntegratorConfig& cfg,
              const std::string& out_file, const std::string& svg_file, int threads,
              const std::map<std::string, double>& svg_scales) {
    const SweepCase sc = parse_case(case_name, lambda_family);
    if (p_step <= 0) throw CLI::ValidationError("--p-step", "must be positive");
    std::vector<double> grid;
    for (double p = p_min; p <= p_max + 1e-9; p += p_step) grid.push_back(p);

    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < grid.size();)
            rows[i] = sweep_point(sc, grid[i], m, kmax, cfg);
    };
    const int nthreads =
        std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::ostringstream prov;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    prov << "frwmono sweep case=" << case_name << (lambda_family.empty() ? "" : "-" + lambda_family)
         << " orders=1.." << kmax << " generated=" << now;

    if (out_file.empty() || out_file == "-") {
        write_sweep_csv(std::cout, rows, kmax, prov.str());
    } else {
        std::ofstream f(out_file);
        if (!f) throw Error("cannot open " + out_file);
        write_sweep_csv(f, rows, kmax, prov.str());
    }
    if (!svg_file.empty()) {
        std::ofstream f(svg_file);
        if (!f) throw Error("cannot open " + svg_file);
        write_sweep_svg(f, rows, kmax, svg_scales);
    }
    return 0;
}

int cmd_monodromy(const std::string& case_name, cplx Lambda, cplx lambda, double m, int order,
                  const std::string& loop_name, double cap, const IntegratorConfig& cfg,
                  const std::string& out_file) {
    const bool k1_case = case_name == "k1";
    if (!k1_case && case_name != "k0")
        throw CLI::ValidationError("--case", "monodromy supports k1 or k0");
    FrwParams prm{k1_case ? 1 : 0, Lambda, lambda, m};
    const PolyVectorField X = frw_field(prm);
    const LoopSet ls = case_loops(k1_case, Lambda);

    BlockFundamental M{4, order, {}};
    if (loop_name == "plus") {
        M = monodromy(X, ls.ivp, ls.plus, order, cfg, ls.singularities);
    } else if (loop_name == "minus") {
        M = monodromy(X, ls.ivp, ls.minus, order, cfg, ls.singularities);
    } else if (loop_name == "commutator") {
        const BlockFundamental M1 = monodromy(X, ls.ivp, ls.plus, order, cfg, ls.singularities);
        const BlockFundamental M2 = monodromy(X, ls.ivp, ls.minus, order, cfg, ls.singularities);
        M.m = commutator_monodromy(M1.m, M2.m);
    } else {
        throw CLI::ValidationError("--loop", "expected plus, minus or commutator");
    }

    std::cout.precision(12);
    for (int k = 1; k <= order; ++k) {
        const Eigen::MatrixXcd R = restrict_order(M, k);
        std::cout << "order " << k << ": sup|M - Id| = "
                  << sup_norm(R - Eigen::MatrixXcd::Identity(R.rows(), R.cols())) << "\n";
    }
    const JetRow jr = jet_row(M, cap);
    std::cout << "jet row survivors (cap " << cap << "): " << jr.survivors.size() << "\n";
    for (const auto& e : jr.survivors)
        std::cout << "  row " << e.row << "  col " << e.col << " (degree " << e.col_degree
                  << ", #" << e.col_in_group << ")  value = " << fmt_cplx(e.value) << "\n";
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) throw Error("cannot open " + out_file);
        write_matrix_csv(f, M.m);
        std::cout << "matrix written to " << out_file << "\n";
    }
    return 0;
}

int cmd_classify(int p_min, int p_max, int q_min, int q_max, const std::string& out_file) {
    const std::string report = render_classify_report(classify_k0(p_min, p_max, q_min, q_max));
    if (out_file.empty() || out_file == "-") {
        std::cout << report;
    } else {
        std::ofstream f(out_file, std::ios::binary);
        if (!f) throw Error("cannot open " + out_file);
        f << report;
    }
    return 0;
}

int cmd_oracle(const std::string& case_name, cplx Lambda, cplx lambda, double m,
               const IntegratorConfig& cfg, const std::string& out_file) {
    QuadratureResult res;
    std::string path_id;
    if (case_name == "k1") {
        res = k436_k1(Lambda, lambda, m, hexagon_path(+1), hexagon_path(-1), cfg);
        path_id = "hexagon-commutator";
    } else if (case_name == "k0") {
        const ParticularSolution sol = sol2(Lambda);
        res = k436_k0(Lambda, lambda, m, spoon_path(sol.t_star, +1), spoon_path(sol.t_star, -1),
                      cfg);
        path_id = "spoon-commutator";
    } else {
        throw CLI::ValidationError("--case", "oracle supports k1 or k0");
    }

    json rec{{"case", case_name},
             {"Lambda", {Lambda.real(), Lambda.imag()}},
             {"lambda", {lambda.real(), lambda.imag()}},
             {"m", m},
             {"K_re", res.K.real()},
             {"K_im", res.K.imag()},
             {"abs_scale", res.abs_scale},
             {"wronskian_drift", res.wronskian_drift},
             {"rtol", cfg.rtol},
             {"path_id", path_id}};

    std::cout << rec.dump(2) << "\n";
    if (!out_file.empty()) {
        json ledger = json::array();
        {
            std::ifstream f(out_file);
            if (f) {
                try {
                    f >> ledger;
                } catch (...) {
                    ledger = json::array();
                }
                if (!ledger.is_array()) ledger = json::array();
            }
        }
        ledger.push_back(rec);
        std::ofstream f(out_file);
        if (!f) throw Error("cannot open " + out_file);
        f << ledger.dump(2) << "\n";
    }
    return 0;
}

int cmd_paths(const std::string& action, const std::string& path_file,
              const std::string& case_name, double clearance) {
    if (action == "list") {
        auto dump = [](const char* name, const PolygonalPath& p) {
            std::cout << name << ":";
            for (cplx v : p.vertices) std::cout << "  " << fmt_cplx(v);
            std::cout << "\n";
        };
        dump("hexagon+", hexagon_path(+1));
        dump("hexagon-", hexagon_path(-1));
        const cplx ts = sol2(cplx(-1.0, 0.0)).t_star;
        dump("spoon+", spoon_path(ts, +1));
        dump("spoon-", spoon_path(ts, -1));
        return 0;
    }
    if (action != "validate") throw CLI::ValidationError("paths", "expected list or validate");
    if (path_file.empty()) throw CLI::ValidationError("--path", "required for validate");
    std::ifstream f(path_file);
    if (!f) throw CLI::ValidationError("--path", "cannot open " + path_file);
    const PolygonalPath p = read_path(f);
    std::cout << "vertices: " << p.vertices.size() << "\nlength: " << p.length()
              << "\nclosed: " << (p.closed() ? "yes" : "no") << "\n";
    const std::vector<cplx> sing = case_name == "k0" ? sol2(cplx(-1.0, 0.0)).singularities
                                                     : sol1(cplx(-1.0, 0.0)).singularities;
    const double d = min_distance(p, sing);
    std::cout << "min distance to " << case_name << " singularities: " << d << "\n";
    if (!p.closed() || d < clearance) {
        std::cout << "invalid: " << (!p.closed() ? "path not closed" : "clearance violated")
                  << "\n";
        return EXIT_NUMERICAL;
    }
    std::cout << "valid\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    // --config provides defaults; explicit flags override them.
    ConfigDefaults cd;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            try {
                cd.kv = load_config(argv[i + 1]);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return EXIT_BAD_ARGS;
            }
        }

    CLI::App app{"monodromy and integrability toolkit for the FRW Hamiltonian family"};
    app.require_subcommand(1);
    std::string config_file;
    app.add_option("--config", config_file, "key = value defaults file")->expected(1);

    IntegratorConfig cfg;
    cfg.rtol = cd.num("rtol", 1e-12);
    cfg.atol = cd.num("atol", 1e-14);

    std::string case_name = cd.str("case", "k1");
    std::string lambda_family = cd.str("lambda-family", "");
    double p_min = cd.num("p-min", 2), p_max = cd.num("p-max", 8), p_step = cd.num("p-step", 1);
    double m = cd.num("m", 1.0);
    int order = cd.integer("order", 5);
    double cap = cd.num("cap", 1e-9);
    std::string Lambda_s = cd.str("Lambda", ""), lambda_s = cd.str("lambda", "");
    std::string out_file = cd.str("out", ""), svg_file = cd.str("svg", "");
    int threads = cd.integer("threads", static_cast<int>(std::thread::hardware_concurrency()));
    std::string loop_name = cd.str("loop", "commutator");
    std::string path_file = cd.str("path", "");
    int q_min = cd.integer("q-min", -50), q_max = cd.integer("q-max", 50);

    auto add_numerics = [&](CLI::App* sub) {
        sub->add_option("--rtol", cfg.rtol, "relative tolerance");
        sub->add_option("--atol", cfg.atol, "absolute tolerance");
        sub->add_option("--m", m, "mass parameter");
        sub->add_option("--config", config_file, "key = value defaults file");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "monodromy deviation/commutator sweep over p");
    sweep->add_option("--case", case_name, "k1, k0-diag-mu{1,2,3} or k0-open-mu{1,2,3}");
    sweep->add_option("--lambda-family", lambda_family, "mu1|mu2|mu3 (with --case k0-diag/k0-open)");
    sweep->add_option("--p-min", p_min);
    sweep->add_option("--p-max", p_max);
    sweep->add_option("--p-step", p_step);
    sweep->add_option("--order", order, "maximal jet order");
    sweep->add_option("--out", out_file, "CSV output ('-' for stdout)");
    sweep->add_option("--svg", svg_file, "optional SVG chart");
    sweep->add_option("--threads", threads);
    add_numerics(sweep);

    CLI::App* mono = app.add_subcommand("monodromy", "single monodromy matrix and jet-row report");
    mono->add_option("--case", case_name, "k1 or k0");
    mono->add_option("--Lambda", Lambda_s, "Lambda (re or re,im)")->required();
    mono->add_option("--lambda", lambda_s, "lambda (re or re,im)")->required();
    mono->add_option("--order", order);
    mono->add_option("--loop", loop_name, "plus, minus or commutator");
    mono->add_option("--cap", cap, "jet-row cap threshold");
    mono->add_option("--out", out_file, "matrix CSV output");
    add_numerics(mono);

    CLI::App* classify = app.add_subcommand("classify", "exact exceptional-parameter classification");
    classify->add_option("--p-min", p_min);
    classify->add_option("--p-max", p_max);
    classify->add_option("--q-min", q_min);
    classify->add_option("--q-max", q_max);
    classify->add_option("--out", out_file, "report output ('-' for stdout)");
    classify->add_option("--config", config_file, "key = value defaults file");

    CLI::App* oracle = app.add_subcommand("oracle", "nested-quadrature obstruction value");
    oracle->add_option("--case", case_name, "k1 or k0");
    oracle->add_option("--Lambda", Lambda_s, "Lambda (re or re,im)")->required();
    oracle->add_option("--lambda", lambda_s, "lambda (re or re,im)")->required();
    oracle->add_option("--out", out_file, "JSON ledger to append to");
    add_numerics(oracle);

    CLI::App* paths = app.add_subcommand("paths", "list built-in paths / validate a path file");
    std::string paths_action = "list";
    paths->add_option("action", paths_action, "list or validate");
    paths->add_option("--path", path_file, "path file for validate");
    paths->add_option("--case", case_name, "k1 or k0 singularity set");
    double clearance = cd.num("clearance", 0.3);
    paths->add_option("--clearance", clearance);
    paths->add_option("--config", config_file, "key = value defaults file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : EXIT_BAD_ARGS;
    }

    try {
        // classify's p defaults differ from sweep's
        if (classify->parsed()) {
            if (!classify->count("--p-min")) p_min = cd.num("p-min", -50);
            if (!classify->count("--p-max")) p_max = cd.num("p-max", 50);
        }
        const cplx Lambda = Lambda_s.empty() ? cplx(0.0, 0.0) : parse_cplx(Lambda_s);
        const cplx lambda = lambda_s.empty() ? cplx(0.0, 0.0) : parse_cplx(lambda_s);

        if (sweep->parsed()) {
            std::map<std::string, double> svg_scales;
            for (const auto& [key, val] : cd.kv)
                if (key.rfind("scale-", 0) == 0) svg_scales[key.substr(6)] = std::stod(val);
            return cmd_sweep(case_name, lambda_family, p_min, p_max, p_step, m, order, cfg,
                             out_file, svg_file, threads, svg_scales);
        }
        if (mono->parsed())
            return cmd_monodromy(case_name, Lambda, lambda, m, order, loop_name, cap, cfg,
                                 out_file);
        if (classify->parsed())
            return cmd_classify(static_cast<int>(p_min), static_cast<int>(p_max), q_min, q_max,
                                out_file);
        if (oracle->parsed()) return cmd_oracle(case_name, Lambda, lambda, m, cfg, out_file);
        if (paths->parsed()) return cmd_paths(paths_action, path_file, case_name, clearance);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_BAD_ARGS;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    }
    return 0;
}
