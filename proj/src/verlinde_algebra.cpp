#include "modfunctor/verlinde_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "modfunctor/errors.hpp"

namespace modfunctor {

FusionRing::FusionRing(const ModularDatum& d) : datum_(&d)
{
    const auto n = static_cast<Eigen::Index>(d.rank());
    for (auto i : d.labels()) {
        Eigen::MatrixXi m(n, n);
        for (auto j : d.labels()) {
            for (auto k : d.labels()) {
                m(j.index, k.index) = static_cast<int>(d.fusion(i, j, d.dual(k)));
            }
        }
        mult_.push_back(std::move(m));
    }
}

RingElement FusionRing::basis(Label i) const
{
    RingElement e(rank(), 0);
    e.at(i.index) = 1;
    return e;
}

RingElement FusionRing::multiply(const RingElement& a, const RingElement& b) const
{
    if (a.size() != rank() || b.size() != rank()) {
        throw length_mismatch("ring elements must have length " + std::to_string(rank()));
    }
    RingElement c(rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < rank(); ++j) {
            if (b[j] == 0) {
                continue;
            }
            for (std::size_t k = 0; k < rank(); ++k) {
                auto n = mult_[i](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
                c[k] += a[i] * b[j] * n;
            }
        }
    }
    return c;
}

Diagonalization diagonalize(const FusionRing& r)
{
    const auto& d = r.datum();
    const auto& S = d.s_matrix();
    const auto n = S.rows();
    const double threshold = d.tolerances().axiom * static_cast<double>(n);

    for (Eigen::Index m = 0; m < n; ++m) {
        if (std::abs(S(0, m)) <= d.tolerances().axiom) {
            throw diagonalization_failure("S[0][" + std::to_string(m) + "] vanishes", std::abs(S(0, m)));
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(S);
    lu.setThreshold(d.tolerances().axiom);
    if (!lu.isInvertible()) {
        throw diagonalization_failure("S is singular", 0.0);
    }
    const Eigen::MatrixXcd s_inv = lu.inverse();

    Diagonalization out;
    out.eigenvalues.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index m = 0; m < n; ++m) {
            out.eigenvalues(i, m) = S(i, m) / S(0, m);
        }
    }
    for (auto i : d.labels()) {
        const Eigen::MatrixXcd conj = s_inv * r.mult_matrix(i).cast<std::complex<double>>() * S;
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                if (a == b) {
                    out.diagonal_residual =
                        std::max(out.diagonal_residual, std::abs(conj(a, a) - out.eigenvalues(i.index, a)));
                } else {
                    out.off_diagonal_residual = std::max(out.off_diagonal_residual, std::abs(conj(a, b)));
                }
            }
        }
    }
    if (out.off_diagonal_residual > threshold) {
        throw diagonalization_failure("S^-1 N_i S is not diagonal", out.off_diagonal_residual);
    }
    if (out.diagonal_residual > threshold) {
        throw diagonalization_failure("diagonal of S^-1 N_i S differs from S[i][m] / S[0][m]", out.diagonal_residual);
    }
    return out;
}

std::complex<double> Character::operator()(const RingElement& a) const
{
    std::complex<double> total = 0.0;
    for (std::size_t i = 0; i < a.size() && i < values.size(); ++i) {
        total += static_cast<double>(a[i]) * values[i];
    }
    return total;
}

std::vector<Character> characters(const FusionRing& r)
{
    const auto diag = diagonalize(r);
    std::vector<Character> out;
    for (std::size_t m = 0; m < r.rank(); ++m) {
        Character chi{m, {}};
        for (std::size_t i = 0; i < r.rank(); ++i) {
            chi.values.push_back(diag.eigenvalues(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)));
        }
        out.push_back(std::move(chi));
    }
    return out;
}

CheckEntry check_diagonalization(const FusionRing& r)
{
    CheckEntry entry;
    entry.name = "S-diagonalization of fusion matrices";
    try {
        auto diag = diagonalize(r);
        entry.residual = Residual::of(std::max(diag.off_diagonal_residual, diag.diagonal_residual));
        std::ostringstream os;
        os << "off-diagonal " << diag.off_diagonal_residual << ", diagonal " << diag.diagonal_residual;
        entry.detail = os.str();
    } catch (const diagonalization_failure& e) {
        entry.passed = false;
        entry.residual = Residual::of(e.residual());
        entry.detail = e.what();
    }
    return entry;
}

} // namespace modfunctor
