#pragma once

#include "flatstrata/presentation.hpp"
#include "flatstrata/tolerances.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace flatstrata {

// A 1-cochain: one coefficient vector per generator, stacked.
struct Cocycle {
  Eigen::VectorXd values;
};

// Bilinear matrix of the cup-product pairing on the fundamental 2-chain of a
// surface relator, with coefficients in the span of P (3 x d):
// omega(u, v) = u^T G v. The chain is sum_k [p_{k-1} | y_k] minus
// [x | x^{-1}] for every inverse letter, where p_k are the relator prefixes.
Eigen::MatrixXd goldman_matrix(const Representation &rep, const Eigen::MatrixXd &coefficient_basis);
Eigen::MatrixXd goldman_matrix(const Representation &rep);

// omega(u, v) with adjoint coefficients; requires a surface presentation
// whose relators are satisfied and u, v cocycles.
double goldman_form(const Representation &rep, const Cocycle &u, const Cocycle &v,
                    const Tolerances &tol = {});

// Value u(w) of a cochain on a word by the cocycle rule
// u(ab) = u(a) + Ad(a) u(b).
AlgebraVector cocycle_value(const Representation &rep, const Word &w, const Cocycle &u);

// d/dt at 0 of trace(w) under x_g -> exp(t u_g) x_g.
double trace_derivative(const Representation &rep, const Word &w, const Cocycle &u);

// Orthonormal basis (harmonic gauge) of the classes u in H^1 with
// trace_derivative(rep, C, u) = 0 for every curve C.
std::vector<Cocycle> fibre_tangent_basis(const Representation &rep, std::span<const Word> curves,
                                         const Tolerances &tol = {});

struct SymplecticAudit {
  int genus = 0;
  int samples = 0;
  double max_antisymmetry = 0.0;  // |omega(u,v) + omega(v,u)|
  double max_coboundary = 0.0;    // |omega(d0 xi, v)|
  double max_gauge_shift = 0.0;   // |omega(u + d0 xi, v) - omega(u, v)|
  double max_isotropy = 0.0;      // |omega| on tangent pairs of the handlebody fibre
  int rank_expected = 0;          // 6g - 6
  int rank_matches = 0;           // samples whose H^1 Gram has rank 6g - 6
};

SymplecticAudit symplectic_audit(int g, int samples, std::uint64_t seed,
                                 const Tolerances &tol = {});

} // namespace flatstrata
