#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "frwmono/jetflow.hpp"

namespace frwmono {

/// Fundamental/monodromy matrix of the linearized system up to the given
/// order, stored densely with columns grouped by degree, highest degree
/// leftmost. Size N = sum_{j=1..order} sym_dim(n, j).
struct BlockFundamental {
    int n = 0;
    int order = 0;
    Eigen::MatrixXcd m;

    int size() const;
    /// Column/row offset of the degree-d group (degree `order` sits at 0).
    int group_offset(int deg) const;
};

/// Bell-polynomial assembly of the fundamental matrix from a jet:
/// block(r, c) = sum over multisets of exactly r parts summing to c of
/// faa_coeff * (Y_i1 ⊙ ... ⊙ Y_ir), zero for r > c.
BlockFundamental assemble_phi(const JetState& jet);

/// Coefficient matrix of the linearized system:
/// block(r, c) = binom(c, r-1) * A_{c-r+1} ⊙ Id^{⊙(r-1)} for r <= c,
/// so that d/dt assemble_phi = system_matrix(A(t)) * assemble_phi.
BlockFundamental system_matrix(std::span<const SymMap> A, int order);

BlockFundamental monodromy(const PolyVectorField& X, const Eigen::VectorXcd& ivp,
                           const PolygonalPath& loop, int order, const IntegratorConfig& cfg,
                           std::span<const cplx> singularities = {});

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2);
double sup_norm(const Eigen::MatrixXcd& m);

/// M2^{-1} M1^{-1} M2 M1, evaluated with LU solves.
Eigen::MatrixXcd commutator_monodromy(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2);

/// Bottom-right corner acting on degrees 1..k only.
Eigen::MatrixXcd restrict_order(const BlockFundamental& M, int k);

struct JetRowEntry {
    int row;          // 1-based within the bottom n rows
    int col;          // 1-based within all N columns
    int col_degree;   // degree group of the column
    int col_in_group; // 1-based within the group
    cplx value;
};

/// Bottom n rows of M - Id with entries below the cap zeroed.
struct JetRow {
    int n = 0;
    int order = 0;
    double cap = 0.0;
    Eigen::MatrixXcd rows;
    std::vector<JetRowEntry> survivors; // ordered by column, then row
};

JetRow jet_row(const BlockFundamental& M, double cap = 1e-9);

/// The obstruction entry of an order-5 commutator-loop jet row: the row-4
/// survivor in the top degree group that has no antisymmetric partner
/// (value = -value') among survivors of other rows; falls back to the
/// max-modulus row-4 survivor when the pair pattern is not recognized.
/// Throws NoObstruction when row 4 has no survivors.
cplx k436_entry(const JetRow& jr);

/// Row-major CSV with "re,im" cell pairs.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_matrix_csv(std::istream& in);

} // namespace frwmono
