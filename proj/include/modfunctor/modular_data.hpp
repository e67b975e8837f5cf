#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace modfunctor {

// Simple object of the category; index 0 is always the monoidal unit.
struct Label {
    std::uint32_t index = 0;

    constexpr Label() = default;
    constexpr explicit Label(std::uint32_t i) : index(i) {}

    constexpr auto operator<=>(const Label&) const = default;
};

inline constexpr Label unit_label{0};

struct Tolerances {
    double axiom = 1e-9;
    double integer = 1e-6;
};

enum class Strictness {
    modular,    // full modular-data axioms
    premodular, // skips unitarity, S^2 = C and the (ST)^3 relation
};

// Dense rank^3 table of non-negative multiplicities. Entry (i, j, k) is the
// dimension of genus-0 blocks with all three points incoming, so (0, j, k) is
// 1 exactly when k is dual to j.
class FusionTensor {
public:
    FusionTensor() = default;
    explicit FusionTensor(std::size_t rank) : rank_(rank), data_(rank * rank * rank, 0) {}

    std::size_t rank() const noexcept { return rank_; }

    std::uint32_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * rank_ + j) * rank_ + k];
    }
    std::uint32_t& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(i * rank_ + j) * rank_ + k];
    }

    friend bool operator==(const FusionTensor&, const FusionTensor&) = default;

private:
    std::size_t rank_ = 0;
    std::vector<std::uint32_t> data_;
};

// Unvalidated contents of a modular-datum document.
struct RawModularData {
    std::size_t rank = 0;
    std::vector<std::string> names;
    std::vector<std::uint32_t> dual;
    mpq_class central_charge;
    std::vector<mpq_class> weights;
    std::vector<std::complex<double>> twists;
    Eigen::MatrixXcd s;
    FusionTensor fusion;
};

struct AxiomCheck {
    std::string name;
    double residual = 0.0;
    bool passed = true;
    std::string detail;
};

// Reads the line-oriented format. Throws syntax_error or dimension_mismatch;
// does not check any axiom.
RawModularData read_modular_data(std::string_view text);

// Inverse of read_modular_data; floats are written with round-trip precision.
std::string write_modular_data(const RawModularData& raw);

// Evaluates every axiom that applies at the given strictness, in a fixed order.
std::vector<AxiomCheck> audit_axioms(const RawModularData& raw, const Tolerances& tol,
                                     Strictness strictness = Strictness::modular);

class ModularDatum {
public:
    // Throws axiom_violation naming the first failed axiom.
    static ModularDatum validated(RawModularData raw, Tolerances tol = {},
                                  Strictness strictness = Strictness::modular);
    // Skips the axioms; only for diagnosing data that failed them.
    static ModularDatum unchecked(RawModularData raw, Tolerances tol = {},
                                  Strictness strictness = Strictness::modular);

    std::size_t rank() const noexcept { return raw_.rank; }
    Label dual(Label l) const { return Label{raw_.dual[l.index]}; }
    std::uint32_t fusion(Label i, Label j, Label k) const { return raw_.fusion(i.index, j.index, k.index); }
    const FusionTensor& fusion_tensor() const noexcept { return raw_.fusion; }
    const Eigen::MatrixXcd& s_matrix() const noexcept { return raw_.s; }
    std::complex<double> s(Label i, Label j) const { return raw_.s(i.index, j.index); }
    std::complex<double> twist(Label l) const { return raw_.twists[l.index]; }
    const mpq_class& central_charge() const noexcept { return raw_.central_charge; }
    const mpq_class& weight(Label l) const { return raw_.weights[l.index]; }
    const std::string& name(Label l) const { return raw_.names[l.index]; }
    std::optional<Label> find_label(std::string_view name) const;
    // Accepts a label name or a decimal index.
    Label resolve_label(std::string_view token) const;
    std::vector<Label> labels() const;

    const Tolerances& tolerances() const noexcept { return tol_; }
    Strictness strictness() const noexcept { return strictness_; }
    const std::string& fingerprint() const noexcept { return fingerprint_; }
    const RawModularData& raw() const noexcept { return raw_; }

    // Permutation matrix of the duality involution.
    Eigen::MatrixXcd charge_conjugation() const;
    // diag(theta_i * exp(-2 pi i c / 24)).
    Eigen::MatrixXcd t_matrix() const;

private:
    ModularDatum(RawModularData raw, Tolerances tol, Strictness strictness);

    RawModularData raw_;
    Tolerances tol_;
    Strictness strictness_;
    std::string fingerprint_;
};

ModularDatum parse_modular_datum(std::string_view text, Tolerances tol = {},
                                 Strictness strictness = Strictness::modular);
std::string read_text_file(const std::filesystem::path& path);
ModularDatum load_modular_datum(const std::filesystem::path& path, Tolerances tol = {},
                                Strictness strictness = Strictness::modular);

// Stable 64-bit hex digest of the datum's contents.
std::string fingerprint(const RawModularData& raw);

struct VerlindeEvaluation {
    FusionTensor rounded;
    double max_integrality_defect = 0.0;
    std::optional<std::array<std::uint32_t, 3>> worst_entry;
};

// N[i][j][k] = sum_m S[i][m] S[j][m] conj(S[dual k][m]) / S[0][m], rounded.
VerlindeEvaluation evaluate_verlinde(const ModularDatum& d);

// Throws non_integral_coefficient or fusion_mismatch.
FusionTensor verlinde_coefficients(const ModularDatum& d);

// Labels i with S[i][j] = (S[i][0] / S[0][0]) S[0][j] for every j.
std::vector<Label> mueger_center(const ModularDatum& d);

struct RankIdentity {
    std::size_t transparent_simples = 0;
    std::size_t rank = 0;
};

RankIdentity rank_identity(const ModularDatum& d);

} // namespace modfunctor
