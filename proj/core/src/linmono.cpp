#include "frwmono/linmono.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "frwmono/errors.hpp"

namespace frwmono {

int BlockFundamental::size() const {
    int total = 0;
    for (int j = 1; j <= order; ++j) total += sym_dim(n, j);
    return total;
}

int BlockFundamental::group_offset(int deg) const {
    if (deg < 1 || deg > order) throw ShapeMismatch("group_offset: degree out of range");
    int off = 0;
    for (int j = order; j > deg; --j) off += sym_dim(n, j);
    return off;
}

BlockFundamental assemble_phi(const JetState& jet) {
    const int n = jet.n, k = jet.order;
    BlockFundamental out{n, k, {}};
    const int N = out.size();
    out.m = Eigen::MatrixXcd::Zero(N, N);

    std::map<std::vector<int>, SymMap> memo;
    auto product_of = [&](const std::vector<int>& parts, auto&& self) -> const SymMap& {
        if (parts.size() == 1) return jet.Y(parts[0]);
        if (auto it = memo.find(parts); it != memo.end()) return it->second;
        std::vector<int> prefix(parts.begin(), parts.end() - 1);
        const SymMap& left = self(prefix, self);
        SymMap r = sym_map_product(left, jet.Y(parts.back()));
        return memo.emplace(parts, std::move(r)).first->second;
    };

    for (int c = 1; c <= k; ++c) {
        const int coff = out.group_offset(c);
        for (const auto& parts : partitions(c)) {
            const int r = static_cast<int>(parts.size());
            const SymMap& P = product_of(parts, product_of);
            const double w = static_cast<double>(faa_coeff(parts));
            out.m.block(out.group_offset(r), coff, P.m.rows(), P.m.cols()) += w * P.m;
        }
    }
    return out;
}

BlockFundamental system_matrix(std::span<const SymMap> A, int order) {
    if (A.empty()) throw ShapeMismatch("system_matrix: no derivative tensors");
    const int n = A[0].n;
    BlockFundamental out{n, order, {}};
    const int N = out.size();
    out.m = Eigen::MatrixXcd::Zero(N, N);

    std::vector<SymMap> id_pow; // id_pow[j] = Id^{⊙j}, j >= 1
    id_pow.push_back(identity_map(n, 1));
    for (int j = 2; j < order; ++j)
        id_pow.push_back(sym_map_product(id_pow.back(), identity_map(n, 1)));

    for (int c = 1; c <= order; ++c)
        for (int r = 1; r <= c; ++r) {
            const int ja = c - r + 1;
            if (ja > static_cast<int>(A.size())) continue;
            SymMap blk = A[static_cast<std::size_t>(ja) - 1];
            if (r > 1) blk = sym_map_product(blk, id_pow[static_cast<std::size_t>(r) - 2]);
            const double w = static_cast<double>(binomial(c, r - 1));
            out.m.block(out.group_offset(r), out.group_offset(c), blk.m.rows(), blk.m.cols()) +=
                w * blk.m;
        }
    return out;
}

BlockFundamental monodromy(const PolyVectorField& X, const Eigen::VectorXcd& ivp,
                           const PolygonalPath& loop, int order, const IntegratorConfig& cfg,
                           std::span<const cplx> singularities) {
    if (!loop.closed()) throw PathMismatch("monodromy: loop is not closed");
    return assemble_phi(integrate_jet(X, ivp, loop, order, cfg, singularities));
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols())
        throw ShapeMismatch("commutator: size mismatch");
    return m1 * m2 - m2 * m1;
}

double sup_norm(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd commutator_monodromy(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols())
        throw ShapeMismatch("commutator_monodromy: size mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu1(m1), lu2(m2);
    return lu2.solve(lu1.solve(m2 * m1));
}

Eigen::MatrixXcd restrict_order(const BlockFundamental& M, int k) {
    if (k < 1 || k > M.order) throw ShapeMismatch("restrict_order: order out of range");
    int nk = 0;
    for (int j = 1; j <= k; ++j) nk += sym_dim(M.n, j);
    const int N = M.size();
    return M.m.block(N - nk, N - nk, nk, nk);
}

JetRow jet_row(const BlockFundamental& M, double cap) {
    const int N = M.size();
    JetRow jr;
    jr.n = M.n;
    jr.order = M.order;
    jr.cap = cap;
    jr.rows = M.m.bottomRows(M.n);
    jr.rows.rightCols(M.n) -= Eigen::MatrixXcd::Identity(M.n, M.n);

    // column -> degree group lookup
    std::vector<int> col_deg(static_cast<std::size_t>(N)), col_in(static_cast<std::size_t>(N));
    for (int d = M.order; d >= 1; --d) {
        const int off = M.group_offset(d);
        for (int j = 0; j < sym_dim(M.n, d); ++j) {
            col_deg[static_cast<std::size_t>(off + j)] = d;
            col_in[static_cast<std::size_t>(off + j)] = j + 1;
        }
    }
    for (int c = 0; c < N; ++c)
        for (int r = 0; r < M.n; ++r) {
            if (std::abs(jr.rows(r, c)) < cap) {
                jr.rows(r, c) = cplx(0.0, 0.0);
            } else {
                jr.survivors.push_back(JetRowEntry{r + 1, c + 1, col_deg[static_cast<std::size_t>(c)],
                                                   col_in[static_cast<std::size_t>(c)],
                                                   jr.rows(r, c)});
            }
        }
    return jr;
}

cplx k436_entry(const JetRow& jr) {
    const int top = jr.order;
    std::vector<const JetRowEntry*> row4, others;
    for (const auto& e : jr.survivors) {
        if (e.row == 4 && e.col_degree == top)
            row4.push_back(&e);
        else if (e.row != 4)
            others.push_back(&e);
    }
    if (row4.empty()) throw NoObstruction("k436_entry: no surviving entry in row 4");

    std::vector<const JetRowEntry*> unpaired;
    for (const auto* e : row4) {
        bool paired = false;
        for (const auto* o : others)
            if (std::abs(e->value + o->value) < 1e-4 * std::abs(e->value)) {
                paired = true;
                break;
            }
        if (!paired) unpaired.push_back(e);
    }
    if (unpaired.size() == 1) return unpaired.front()->value;

    const auto* best = *std::max_element(row4.begin(), row4.end(),
                                         [](const JetRowEntry* a, const JetRowEntry* b) {
                                             return std::abs(a->value) < std::abs(b->value);
                                         });
    return best->value;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m) {
    out.precision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << m(r, c).real() << ',' << m(r, c).imag();
        }
        out << '\n';
    }
}

Eigen::MatrixXcd read_matrix_csv(std::istream& in) {
    std::vector<std::vector<cplx>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() % 2 != 0)
            throw ShapeMismatch("read_matrix_csv: odd field count in row");
        std::vector<cplx> row;
        for (std::size_t i = 0; i < vals.size(); i += 2) row.emplace_back(vals[i], vals[i + 1]);
        if (!rows.empty() && rows.front().size() != row.size())
            throw ShapeMismatch("read_matrix_csv: ragged rows");
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXcd m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return m;
}

} // namespace frwmono
