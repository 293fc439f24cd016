#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "frwmono/errors.hpp"
#include "frwmono/frwmodel.hpp"

namespace frwmono {

namespace {

std::optional<Rat> mu_of(int i, int p) {
    try {
        switch (i) {
        case 1: return mu1(p).coeff;
        case 2: return mu2(p).coeff;
        case 3: return mu3(p).coeff;
        }
    } catch (const PoleInFamily&) {
        return std::nullopt;
    }
    return std::nullopt;
}

struct Cell {
    Rat alpha;
    std::vector<SetWitness> mem;
};

} // namespace

ClassifyReport classify_k0(int p_min, int p_max, int q_min, int q_max) {
    ClassifyReport rep;
    rep.p_min = p_min;
    rep.p_max = p_max;
    rep.q_min = q_min;
    rep.q_max = q_max;

    for (int i = 1; i <= 3; ++i) {
        std::map<int, Rat> ai;
        for (int p = p_min; p <= p_max; ++p)
            if (auto a = mu_of(i, p)) ai.emplace(p, *a);
        for (int j = i; j <= 3; ++j) {
            std::map<int, Rat> bj;
            for (int q = q_min; q <= q_max; ++q)
                if (auto b = mu_of(j, q)) bj.emplace(q, *b);

            std::map<std::pair<int, int>, Cell> hits;
            std::map<int, int> col_eligible, row_eligible, col_hits, row_hits;
            for (const auto& [p, a] : ai)
                for (const auto& [q, b] : bj) {
                    if (a * b == 1) {
                        rep.degenerate.push_back({i, j, p, q});
                        continue;
                    }
                    ++col_eligible[q];
                    ++row_eligible[p];
                    const Rat alpha = alpha23_exact(a, b);
                    auto mem = table_membership(alpha);
                    if (mem.empty()) continue;
                    ++col_hits[q];
                    ++row_hits[p];
                    hits.emplace(std::make_pair(p, q), Cell{alpha, std::move(mem)});
                }

            // full columns/rows: every eligible point hits with one common value
            auto full = [&](const std::map<int, int>& elig, const std::map<int, int>& got,
                            bool is_col) {
                std::vector<int> out;
                for (const auto& [idx, n_elig] : elig) {
                    if (n_elig < 10) continue;
                    auto it = got.find(idx);
                    if (it == got.end() || it->second != n_elig) continue;
                    std::optional<Rat> common;
                    bool ok = true;
                    for (const auto& [pq, cell] : hits) {
                        if ((is_col ? pq.second : pq.first) != idx) continue;
                        if (!common)
                            common = cell.alpha;
                        else if (*common != cell.alpha)
                            ok = false;
                    }
                    if (ok) out.push_back(idx);
                }
                return out;
            };
            const std::vector<int> fam_cols = full(col_eligible, col_hits, true);
            const std::vector<int> fam_rows = full(row_eligible, row_hits, false);

            auto first_cell_in = [&](bool is_col, int idx) -> const Cell& {
                for (const auto& [pq, cell] : hits)
                    if ((is_col ? pq.second : pq.first) == idx) return cell;
                throw Error("classify_k0: empty family");
            };
            for (int q : fam_cols) {
                const Cell& c = first_cell_in(true, q);
                rep.families.push_back(
                    FamilyLine{i, j, true, q, c.alpha, c.mem.front().set, c.mem.front().p});
            }
            for (int p : fam_rows) {
                const Cell& c = first_cell_in(false, p);
                rep.families.push_back(
                    FamilyLine{i, j, false, p, c.alpha, c.mem.front().set, c.mem.front().p});
            }

            for (const auto& [pq, cell] : hits) {
                const bool in_col =
                    std::find(fam_cols.begin(), fam_cols.end(), pq.second) != fam_cols.end();
                const bool in_row =
                    std::find(fam_rows.begin(), fam_rows.end(), pq.first) != fam_rows.end();
                for (const auto& sw : cell.mem) {
                    const SweepHit hit{i, j, pq.first, pq.second, cell.alpha, sw.set, sw.p};
                    rep.hits.push_back(hit);
                    if (!in_col && !in_row) rep.isolated.push_back(hit);
                }
            }
        }
    }
    return rep;
}

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace

std::string render_classify_report(const ClassifyReport& rep) {
    std::ostringstream os;
    os << "FRW k=0 exceptional-parameter classification\n";
    os << "sweep: Lambda = mu_i(p), lambda = mu_j(q), i <= j, p in [" << rep.p_min << ", "
       << rep.p_max << "], q in [" << rep.q_min << ", " << rep.q_max << "]\n";
    os << "alpha_23 = (3ab + 2a + 2b + 1)/(ab - 1), a = Lambda/m^2, b = lambda/m^2\n";
    os << "sets: S1 = {(1+12p)(7+12p)/72}, S2 = {p(2p-1)}, S3 = {(1+4p)(3+4p)/8}, p integer\n";
    os << "\n";
    os << "degenerate (ab = 1; alpha_23 -> 1 in the limit):\n";
    if (rep.degenerate.empty()) {
        os << "  none\n";
    } else {
        for (const auto& d : rep.degenerate)
            os << "  (i,j,p,q) = (" << d[0] << "," << d[1] << "," << d[2] << "," << d[3] << ")\n";
    }
    os << "\n";

    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) {
            long count = 0;
            for (const auto& h : rep.hits)
                if (h.i == i && h.j == j) ++count;
            os << "R_" << i << j << ": ";
            if (count == 0) {
                os << "no hits\n";
                continue;
            }
            os << count << " hits\n";
            for (const auto& f : rep.families) {
                if (f.i != i || f.j != j) continue;
                if (f.fixed_q)
                    os << "  family: R_" << i << j << "(p," << f.fixed << ") = " << rat_str(f.alpha)
                       << " in " << f.set << " (witness " << f.witness << "), every p in range\n";
                else
                    os << "  family: R_" << i << j << "(" << f.fixed << ",q) = " << rat_str(f.alpha)
                       << " in " << f.set << " (witness " << f.witness << "), every q in range\n";
            }
            for (const auto& h : rep.isolated) {
                if (h.i != i || h.j != j) continue;
                os << "  isolated: R_" << i << j << "(" << h.p << "," << h.q << ") = "
                   << rat_str(h.alpha) << " in " << h.set << " (witness " << h.witness << ")\n";
            }
        }
    os << "\n";
    os << "known integrable pairs (Lambda, lambda):\n";
    os << "  (-m^2, -m^2)\n";
    os << "  (-m^2/3, -m^2/3)\n";
    os << "  (-m^2/3, -8m^2/3)\n";
    os << "  (-m^2/6, -8m^2/3)\n";
    os << "\n";
    os << "open pairs (Lambda, lambda):\n";
    os << "  (-m^2/136, -8m^2/3)\n";
    os << "  (-m^2, mu_1(p)), p integer\n";
    os << "  (-m^2, mu_2(p)), p integer, p != 1\n";
    os << "  (-m^2, mu_3(p)), p integer\n";
    os << "\n";
    os << "[csv]\n";
    os << "i,j,p,q,alpha,set,witness\n";
    for (const auto& h : rep.hits)
        os << h.i << ',' << h.j << ',' << h.p << ',' << h.q << ',' << rat_str(h.alpha) << ','
           << h.set << ',' << h.witness << '\n';
    return os.str();
}

} // namespace frwmono
