#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "modfunctor/modular_data.hpp"

namespace modfunctor::testing {

inline std::filesystem::path data_dir()
{
    return MODFUNCTOR_DATA_DIR;
}

inline ModularDatum load(const std::string& name, Strictness strictness = Strictness::modular)
{
    return load_modular_datum(data_dir() / name, {}, strictness);
}

inline RawModularData load_raw(const std::string& name)
{
    return read_modular_data(read_text_file(data_dir() / name));
}

inline const std::vector<std::string>& modular_fixtures()
{
    static const std::vector<std::string> names{"trivial.md", "fibonacci.md", "ising.md", "su2_4.md", "su3_1.md"};
    return names;
}

// Closed Verlinde sum: sum_m prod_i (S[x_i][m] / S[0][m]) * S[0][m]^(2 - 2g).
// Kept independent of the graph-sum evaluator it is used to check.
inline std::complex<double> verlinde_closed_form(const ModularDatum& d, unsigned genus, std::span<const Label> xs)
{
    const auto& S = d.s_matrix();
    std::complex<double> total = 0.0;
    for (Eigen::Index m = 0; m < S.cols(); ++m) {
        std::complex<double> term = std::pow(S(0, m), 2.0 - 2.0 * genus);
        for (auto x : xs) {
            term *= S(x.index, m) / S(0, m);
        }
        total += term;
    }
    return total;
}

inline std::int64_t verlinde_closed_form_rounded(const ModularDatum& d, unsigned genus, std::span<const Label> xs)
{
    return static_cast<std::int64_t>(std::llround(verlinde_closed_form(d, genus, xs).real()));
}

inline std::vector<Label> labels_of(std::initializer_list<std::uint32_t> xs)
{
    std::vector<Label> out;
    for (auto x : xs) {
        out.emplace_back(x);
    }
    return out;
}

} // namespace modfunctor::testing
