#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "modfunctor/check_report.hpp"
#include "modfunctor/modular_data.hpp"

namespace modfunctor {

using RingElement = std::vector<std::int64_t>;

// Fusion ring in the basis of simple labels. (N_i)[j][k] is the coefficient of
// e_k in e_i * e_j, which is N[i][j][dual k].
class FusionRing {
public:
    explicit FusionRing(const ModularDatum& d);
    // the ring refers to the datum
    explicit FusionRing(ModularDatum&&) = delete;

    const ModularDatum& datum() const noexcept { return *datum_; }
    std::size_t rank() const noexcept { return mult_.size(); }
    const Eigen::MatrixXi& mult_matrix(Label i) const { return mult_[i.index]; }

    RingElement basis(Label i) const;
    // Throws length_mismatch.
    RingElement multiply(const RingElement& a, const RingElement& b) const;

private:
    const ModularDatum* datum_;
    std::vector<Eigen::MatrixXi> mult_;
};

struct Diagonalization {
    // E[i][m] = S[i][m] / S[0][m]
    Eigen::MatrixXcd eigenvalues;
    // max over i of the off-diagonal entries of S^-1 N_i S
    double off_diagonal_residual = 0.0;
    // max over i, m of |(S^-1 N_i S)[m][m] - E[i][m]|
    double diagonal_residual = 0.0;
};

// Throws diagonalization_failure when S is singular, some S[0][m] vanishes, or
// either residual exceeds axiom tolerance * rank.
Diagonalization diagonalize(const FusionRing& r);

// Column m of E as a function on the basis: chi_m(e_i) = E[i][m].
struct Character {
    std::size_t column = 0;
    std::vector<std::complex<double>> values;

    std::complex<double> operator()(const RingElement& a) const;
};

std::vector<Character> characters(const FusionRing& r);

// Diagonalization as a report entry; never throws.
CheckEntry check_diagonalization(const FusionRing& r);

} // namespace modfunctor
