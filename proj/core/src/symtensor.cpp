#include "frwmono/symtensor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace frwmono {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

long long multinomial(int k, std::span<const int> alpha) {
    long long r = 1;
    int acc = 0;
    for (int a : alpha) {
        if (a < 0) throw ShapeMismatch("multinomial: negative exponent");
        acc += a;
        r *= binomial(acc, a);
    }
    if (acc != k) throw ShapeMismatch("multinomial: exponents do not sum to degree");
    return r;
}

int sym_dim(int n, int k) {
    if (n < 1 || k < 0) throw ShapeMismatch("sym_dim: need n >= 1, k >= 0");
    return static_cast<int>(binomial(n + k - 1, n - 1));
}

int ExponentVector::degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
}

namespace {

void gen_basis(int n, int k, std::vector<int>& cur, std::vector<ExponentVector>& out) {
    if (n == 1) {
        cur.push_back(k);
        out.push_back(ExponentVector{cur});
        cur.pop_back();
        return;
    }
    for (int e = k; e >= 0; --e) {
        cur.push_back(e);
        gen_basis(n - 1, k - e, cur, out);
        cur.pop_back();
    }
}

std::mutex g_basis_mutex;
std::map<std::pair<int, int>, std::unique_ptr<std::vector<ExponentVector>>> g_basis;

} // namespace

const std::vector<ExponentVector>& monomial_basis(int n, int k) {
    if (n < 1 || k < 0) throw ShapeMismatch("monomial_basis: need n >= 1, k >= 0");
    std::lock_guard lock(g_basis_mutex);
    auto& slot = g_basis[{n, k}];
    if (!slot) {
        auto v = std::make_unique<std::vector<ExponentVector>>();
        v->reserve(sym_dim(n, k));
        std::vector<int> cur;
        gen_basis(n, k, cur, *v);
        slot = std::move(v);
    }
    return *slot;
}

int basis_index(int n, int k, std::span<const int> exps) {
    if (static_cast<int>(exps.size()) != n)
        throw ShapeMismatch("basis_index: wrong number of variables");
    int idx = 0;
    for (int pos = 0; pos < n - 1; ++pos) {
        int e = exps[pos];
        if (e < 0 || e > k) throw ShapeMismatch("basis_index: exponent out of range");
        // monomials with a larger leading exponent come first
        for (int v = k; v > e; --v) idx += sym_dim(n - pos - 1, k - v);
        k -= e;
    }
    if (exps[exps.size() - 1] != k) throw ShapeMismatch("basis_index: degree mismatch");
    return idx;
}

SymMap identity_map(int n, int deg) {
    int d = sym_dim(n, deg);
    return SymMap{n, deg, deg, Eigen::MatrixXcd::Identity(d, d)};
}

SymMap zero_map(int n, int in_deg, int out_deg) {
    return SymMap{n, in_deg, out_deg,
                  Eigen::MatrixXcd::Zero(sym_dim(n, out_deg), sym_dim(n, in_deg))};
}

SymVector sym_power(const Eigen::VectorXcd& u, int k) {
    int n = static_cast<int>(u.size());
    const auto& bas = monomial_basis(n, k);
    SymVector out{n, k, Eigen::VectorXcd(bas.size())};
    for (size_t i = 0; i < bas.size(); ++i) {
        const auto& al = bas[i].exponents;
        cplx v(static_cast<double>(multinomial(k, al)), 0.0);
        for (int l = 0; l < n; ++l)
            for (int d = 0; d < al[l]; ++d) v *= u[l];
        out.coeffs[static_cast<Eigen::Index>(i)] = v;
    }
    return out;
}

SymVector sym_vec_product(const SymVector& x, const SymVector& y) {
    if (x.n != y.n) throw ShapeMismatch("sym_vec_product: mixed variable counts");
    int n = x.n, c = x.deg + y.deg;
    const auto& ba = monomial_basis(n, x.deg);
    const auto& bb = monomial_basis(n, y.deg);
    SymVector out{n, c, Eigen::VectorXcd::Zero(sym_dim(n, c))};
    std::vector<int> g(n);
    for (size_t ia = 0; ia < ba.size(); ++ia) {
        for (size_t ib = 0; ib < bb.size(); ++ib) {
            for (int l = 0; l < n; ++l)
                g[l] = ba[ia].exponents[l] + bb[ib].exponents[l];
            out.coeffs[basis_index(n, c, g)] +=
                x.coeffs[static_cast<Eigen::Index>(ia)] * y.coeffs[static_cast<Eigen::Index>(ib)];
        }
    }
    return out;
}

SymVector apply(const SymMap& F, const SymVector& x) {
    if (F.n != x.n || F.in_deg != x.deg)
        throw ShapeMismatch("apply: operand does not match map domain");
    return SymVector{F.n, F.out_deg, F.m * x.coeffs};
}

namespace {

// Precomputed contraction for one operand shape of the map product.
// Flat indices address the column-major storage of the factors and result.
struct ProductTable {
    std::vector<int32_t> out, lhs, rhs;
    std::vector<double> w;
    int out_rows = 0, out_cols = 0;
};

std::mutex g_table_mutex;
std::map<std::array<int, 5>, std::shared_ptr<const ProductTable>> g_tables;

std::shared_ptr<const ProductTable> product_table(int n, int a, int p, int b, int q) {
    std::array<int, 5> key{n, a, p, b, q};
    thread_local std::map<std::array<int, 5>, std::shared_ptr<const ProductTable>> t_tables;
    if (auto it = t_tables.find(key); it != t_tables.end()) return it->second;
    {
        std::lock_guard lock(g_table_mutex);
        auto it = g_tables.find(key);
        if (it != g_tables.end()) {
            t_tables.emplace(key, it->second);
            return it->second;
        }
    }
    auto tbl = std::make_shared<ProductTable>();
    const auto& bas_a = monomial_basis(n, a);
    const auto& bas_b = monomial_basis(n, b);
    const auto& bas_p = monomial_basis(n, p);
    const auto& bas_q = monomial_basis(n, q);
    int da = sym_dim(n, a), dp = sym_dim(n, p), dq = sym_dim(n, q);
    int dt = sym_dim(n, p + q);
    tbl->out_rows = dt;
    tbl->out_cols = sym_dim(n, a + b);
    // row-side convolution (tau = rho + sigma), shared by every column pair
    std::vector<std::array<int32_t, 3>> conv;
    conv.reserve(bas_p.size() * bas_q.size());
    std::vector<int> t(n);
    for (size_t ir = 0; ir < bas_p.size(); ++ir)
        for (size_t is = 0; is < bas_q.size(); ++is) {
            for (int l = 0; l < n; ++l)
                t[l] = bas_p[ir].exponents[l] + bas_q[is].exponents[l];
            conv.push_back({static_cast<int32_t>(basis_index(n, p + q, t)),
                            static_cast<int32_t>(ir), static_cast<int32_t>(is)});
        }
    std::vector<int> g(n);
    for (size_t ia = 0; ia < bas_a.size(); ++ia)
        for (size_t ib = 0; ib < bas_b.size(); ++ib) {
            for (int l = 0; l < n; ++l)
                g[l] = bas_a[ia].exponents[l] + bas_b[ib].exponents[l];
            int ig = basis_index(n, a + b, g);
            double w = static_cast<double>(multinomial(a, bas_a[ia].exponents)) *
                       static_cast<double>(multinomial(b, bas_b[ib].exponents)) /
                       static_cast<double>(multinomial(a + b, g));
            for (const auto& cv : conv) {
                tbl->out.push_back(cv[0] + dt * ig);
                tbl->lhs.push_back(cv[1] + dp * static_cast<int32_t>(ia));
                tbl->rhs.push_back(cv[2] + dq * static_cast<int32_t>(ib));
                tbl->w.push_back(w);
            }
        }
    std::lock_guard lock(g_table_mutex);
    auto [it, inserted] = g_tables.emplace(key, std::move(tbl));
    t_tables.emplace(key, it->second);
    return it->second;
}

} // namespace

SymMap sym_map_product(const SymMap& F, const SymMap& G) {
    if (F.n != G.n) throw ShapeMismatch("sym_map_product: mixed variable counts");
    if (F.m.rows() != sym_dim(F.n, F.out_deg) || F.m.cols() != sym_dim(F.n, F.in_deg) ||
        G.m.rows() != sym_dim(G.n, G.out_deg) || G.m.cols() != sym_dim(G.n, G.in_deg))
        throw ShapeMismatch("sym_map_product: matrix does not match declared degrees");
    auto tbl = product_table(F.n, F.in_deg, F.out_deg, G.in_deg, G.out_deg);
    SymMap out{F.n, F.in_deg + G.in_deg, F.out_deg + G.out_deg,
               Eigen::MatrixXcd::Zero(tbl->out_rows, tbl->out_cols)};
    const cplx* f = F.m.data();
    const cplx* g = G.m.data();
    cplx* o = out.m.data();
    size_t nq = tbl->w.size();
    for (size_t i = 0; i < nq; ++i)
        o[tbl->out[i]] += tbl->w[i] * f[tbl->lhs[i]] * g[tbl->rhs[i]];
    return out;
}

long long faa_coeff(std::span<const int> parts) {
    int k = 0;
    for (int p : parts) {
        if (p < 1) throw ShapeMismatch("faa_coeff: parts must be positive");
        k += p;
    }
    if (k > 20) throw ShapeMismatch("faa_coeff: degree too large for exact integers");
    auto fact = [](int v) {
        long long r = 1;
        for (int i = 2; i <= v; ++i) r *= i;
        return r;
    };
    long long r = fact(k);
    for (int p : parts) r /= fact(p);
    int run = 1;
    std::vector<int> sorted(parts.begin(), parts.end());
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            r /= fact(run);
            run = 1;
        }
    }
    return r;
}

namespace {

void gen_partitions(int k, int mx, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (k == 0) {
        std::vector<int> asc(cur.rbegin(), cur.rend());
        out.push_back(std::move(asc));
        return;
    }
    for (int last = std::min(k, mx); last >= 1; --last) {
        cur.push_back(last);
        gen_partitions(k - last, last, cur, out);
        cur.pop_back();
    }
}

std::mutex g_part_mutex;
std::map<int, std::unique_ptr<std::vector<std::vector<int>>>> g_partitions;

} // namespace

const std::vector<std::vector<int>>& partitions(int k) {
    if (k < 0 || k > 20) throw ShapeMismatch("partitions: k out of supported range");
    std::lock_guard lock(g_part_mutex);
    auto& slot = g_partitions[k];
    if (!slot) {
        auto v = std::make_unique<std::vector<std::vector<int>>>();
        std::vector<int> cur;
        gen_partitions(k, k, cur, *v);
        slot = std::move(v);
    }
    return *slot;
}

} // namespace frwmono
