#include "modfunctor/modular_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "modfunctor/errors.hpp"

namespace modfunctor {

namespace {

std::vector<std::string_view> tokenize(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
            ++pos;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') {
            ++end;
        }
        if (end > pos) {
            out.push_back(line.substr(pos, end - pos));
        }
        pos = end;
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line)
{
    Int value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw syntax_error(line, "expected an integer, got '" + std::string(tok) + "'");
    }
    return value;
}

double parse_double(std::string_view tok, std::size_t line)
{
    double value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
        throw syntax_error(line, "expected a decimal number, got '" + std::string(tok) + "'");
    }
    return value;
}

mpq_class parse_rational(std::string_view tok, std::size_t line)
{
    auto slash = tok.find('/');
    auto num = parse_int<long long>(tok.substr(0, slash), line);
    long long den = 1;
    if (slash != std::string_view::npos) {
        den = parse_int<long long>(tok.substr(slash + 1), line);
        if (den <= 0) {
            throw syntax_error(line, "rational denominator must be positive");
        }
    }
    mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    q.canonicalize();
    return q;
}

std::uint32_t parse_index(std::string_view tok, std::size_t rank, std::size_t line)
{
    auto i = parse_int<std::uint32_t>(tok, line);
    if (i >= rank) {
        throw dimension_mismatch("line " + std::to_string(line) + ": index " + std::to_string(i) +
                                 " out of range for rank " + std::to_string(rank));
    }
    return i;
}

void expect_arity(const std::vector<std::string_view>& tok, std::size_t n, std::size_t line)
{
    if (tok.size() != n) {
        throw syntax_error(line, "'" + std::string(tok[0]) + "' expects " + std::to_string(n - 1) + " arguments");
    }
}

std::complex<double> unit_phase(const mpq_class& turns)
{
    double x = 2.0 * std::numbers::pi * turns.get_d();
    return {std::cos(x), std::sin(x)};
}

AxiomCheck numeric_axiom(std::string name, double residual, double tol, std::string detail = {})
{
    AxiomCheck c{std::move(name), residual, residual <= tol, {}};
    if (!c.passed) {
        c.detail = detail.empty() ? "residual above tolerance" : std::move(detail);
    }
    return c;
}

AxiomCheck count_axiom(std::string name, std::size_t violations, std::string first)
{
    return {std::move(name), static_cast<double>(violations), violations == 0,
            violations == 0 ? std::string{} : std::to_string(violations) + " violation(s), first at " + first};
}

std::string triple(std::size_t i, std::size_t j, std::size_t k)
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

} // namespace

RawModularData read_modular_data(std::string_view text)
{
    RawModularData raw;
    bool have_rank = false;
    bool have_dual = false;
    bool have_c = false;
    bool have_weights = false;
    std::vector<bool> twist_seen;
    std::vector<bool> s_seen;
    std::vector<bool> n_seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tok = tokenize(line);
        if (tok.empty()) {
            continue;
        }
        const auto& key = tok[0];
        if (key == "rank") {
            if (have_rank) {
                throw syntax_error(line_no, "duplicate 'rank'");
            }
            expect_arity(tok, 2, line_no);
            raw.rank = parse_int<std::size_t>(tok[1], line_no);
            if (raw.rank == 0) {
                throw dimension_mismatch("rank must be positive");
            }
            have_rank = true;
            const auto n = raw.rank;
            for (std::size_t i = 0; i < n; ++i) {
                raw.names.push_back(std::to_string(i));
            }
            raw.twists.assign(n, {});
            raw.s = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
            raw.fusion = FusionTensor(n);
            twist_seen.assign(n, false);
            s_seen.assign(n * n, false);
            n_seen.assign(n * n * n, false);
            continue;
        }
        if (!have_rank) {
            throw syntax_error(line_no, "'rank' must be declared before '" + std::string(key) + "'");
        }
        const auto n = raw.rank;
        if (key == "labels") {
            if (tok.size() - 1 != n) {
                throw dimension_mismatch("line " + std::to_string(line_no) + ": " + std::to_string(tok.size() - 1) +
                                         " labels for rank " + std::to_string(n));
            }
            for (std::size_t i = 0; i < n; ++i) {
                raw.names[i] = std::string(tok[i + 1]);
            }
        } else if (key == "dual") {
            if (tok.size() - 1 != n) {
                throw dimension_mismatch("line " + std::to_string(line_no) + ": dual has " +
                                         std::to_string(tok.size() - 1) + " entries for rank " + std::to_string(n));
            }
            raw.dual.clear();
            for (std::size_t i = 0; i < n; ++i) {
                raw.dual.push_back(parse_index(tok[i + 1], n, line_no));
            }
            have_dual = true;
        } else if (key == "central_charge") {
            expect_arity(tok, 2, line_no);
            raw.central_charge = parse_rational(tok[1], line_no);
            have_c = true;
        } else if (key == "weights") {
            if (tok.size() - 1 != n) {
                throw dimension_mismatch("line " + std::to_string(line_no) + ": " + std::to_string(tok.size() - 1) +
                                         " weights for rank " + std::to_string(n));
            }
            raw.weights.clear();
            for (std::size_t i = 0; i < n; ++i) {
                raw.weights.push_back(parse_rational(tok[i + 1], line_no));
            }
            have_weights = true;
        } else if (key == "twist") {
            expect_arity(tok, 4, line_no);
            auto i = parse_index(tok[1], n, line_no);
            if (twist_seen[i]) {
                throw syntax_error(line_no, "duplicate twist for label " + std::to_string(i));
            }
            twist_seen[i] = true;
            raw.twists[i] = {parse_double(tok[2], line_no), parse_double(tok[3], line_no)};
        } else if (key == "S") {
            expect_arity(tok, 5, line_no);
            auto i = parse_index(tok[1], n, line_no);
            auto j = parse_index(tok[2], n, line_no);
            if (s_seen[i * n + j]) {
                throw syntax_error(line_no, "duplicate S entry");
            }
            s_seen[i * n + j] = true;
            raw.s(i, j) = {parse_double(tok[3], line_no), parse_double(tok[4], line_no)};
        } else if (key == "N") {
            expect_arity(tok, 5, line_no);
            auto i = parse_index(tok[1], n, line_no);
            auto j = parse_index(tok[2], n, line_no);
            auto k = parse_index(tok[3], n, line_no);
            auto m = parse_int<std::uint32_t>(tok[4], line_no);
            if (n_seen[(i * n + j) * n + k]) {
                throw syntax_error(line_no, "duplicate N entry");
            }
            n_seen[(i * n + j) * n + k] = true;
            raw.fusion(i, j, k) = m;
        } else {
            throw syntax_error(line_no, "unknown directive '" + std::string(key) + "'");
        }
    }

    if (!have_rank) {
        throw syntax_error(line_no, "missing 'rank'");
    }
    if (!have_dual) {
        throw syntax_error(line_no, "missing 'dual'");
    }
    if (!have_c) {
        throw syntax_error(line_no, "missing 'central_charge'");
    }
    if (!have_weights) {
        throw syntax_error(line_no, "missing 'weights'");
    }
    for (std::size_t i = 0; i < raw.rank; ++i) {
        if (!twist_seen[i]) {
            throw dimension_mismatch("missing twist for label " + std::to_string(i));
        }
    }
    return raw;
}

std::string write_modular_data(const RawModularData& raw)
{
    std::ostringstream os;
    char buf[96];
    const auto n = raw.rank;
    os << "rank " << n << "\nlabels";
    for (const auto& name : raw.names) {
        os << ' ' << name;
    }
    os << "\ndual";
    for (auto d : raw.dual) {
        os << ' ' << d;
    }
    os << "\ncentral_charge " << raw.central_charge.get_num().get_str() << '/'
       << raw.central_charge.get_den().get_str() << "\nweights";
    for (const auto& w : raw.weights) {
        os << ' ' << w.get_num().get_str() << '/' << w.get_den().get_str();
    }
    os << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "twist %zu %.17g %.17g\n", i, raw.twists[i].real(), raw.twists[i].imag());
        os << buf;
    }
    for (Eigen::Index i = 0; i < raw.s.rows(); ++i) {
        for (Eigen::Index j = 0; j < raw.s.cols(); ++j) {
            auto z = raw.s(i, j);
            if (z != 0.0) {
                std::snprintf(buf, sizeof buf, "S %td %td %.17g %.17g\n", i, j, z.real(), z.imag());
                os << buf;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (auto m = raw.fusion(i, j, k)) {
                    os << "N " << i << ' ' << j << ' ' << k << ' ' << m << '\n';
                }
            }
        }
    }
    return os.str();
}

std::vector<AxiomCheck> audit_axioms(const RawModularData& raw, const Tolerances& tol, Strictness strictness)
{
    const auto n = raw.rank;
    const auto& S = raw.s;
    std::vector<AxiomCheck> out;

    {
        std::size_t bad = 0;
        std::string first;
        for (std::size_t i = 0; i < n; ++i) {
            if (raw.dual[raw.dual[i]] != i) {
                if (bad++ == 0) {
                    first = "label " + std::to_string(i);
                }
            }
        }
        out.push_back(count_axiom("dual involution", bad, first));
    }
    out.push_back(count_axiom("dual unit", raw.dual[0] == 0 ? 0 : 1, "label 0"));

    {
        auto s00 = S(0, 0);
        double r = s00.real() > 0.0 ? std::abs(s00.imag()) : std::abs(s00) + 1.0;
        out.push_back(numeric_axiom("S[0][0] positive", r, tol.axiom, "S[0][0] must be real and positive"));
    }
    out.push_back(numeric_axiom("S symmetric", (S - S.transpose()).cwiseAbs().maxCoeff(), tol.axiom));

    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(S.rows(), S.cols());
    for (std::size_t i = 0; i < n; ++i) {
        C(static_cast<Eigen::Index>(i), raw.dual[i]) = 1.0;
    }
    if (strictness == Strictness::modular) {
        const auto id = Eigen::MatrixXcd::Identity(S.rows(), S.cols());
        out.push_back(numeric_axiom("S unitary", (S * S.adjoint() - id).cwiseAbs().maxCoeff(), tol.axiom));
        Eigen::MatrixXcd S2 = S * S;
        out.push_back(numeric_axiom("S^2 = C", (S2 - C).cwiseAbs().maxCoeff(), tol.axiom,
                                    "S^2 disagrees with the declared duality"));
        // (S diag(theta))^3 = exp(2 pi i c / 8) S^2, i.e. (S T)^3 = S^2 for the normalized T.
        Eigen::MatrixXcd st = S * Eigen::VectorXcd::Map(raw.twists.data(), S.rows()).asDiagonal();
        Eigen::MatrixXcd lhs = st * st * st;
        Eigen::MatrixXcd rhs = unit_phase(raw.central_charge / 8) * S2;
        out.push_back(numeric_axiom("(ST)^3", (lhs - rhs).cwiseAbs().maxCoeff(), tol.axiom));
    }

    {
        double r = 0.0;
        for (const auto& t : raw.twists) {
            r = std::max(r, std::abs(std::abs(t) - 1.0));
        }
        out.push_back(numeric_axiom("twist modulus", r, tol.axiom));
    }
    {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r = std::max(r, std::abs(raw.twists[raw.dual[i]] - raw.twists[i]));
        }
        out.push_back(numeric_axiom("twist duality", r, tol.axiom));
    }
    {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r = std::max(r, std::abs(raw.twists[i] - unit_phase(raw.weights[i])));
        }
        out.push_back(numeric_axiom("twist weights", r, tol.axiom, "theta_i != exp(2 pi i w_i)"));
    }
    out.push_back(count_axiom("unit weight", raw.weights[0] == 0 ? 0 : 1, "label 0"));

    const auto& N = raw.fusion;
    {
        std::size_t bad = 0;
        std::string first;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                std::uint32_t want = (k == raw.dual[j]) ? 1 : 0;
                if (N(0, j, k) != want && bad++ == 0) {
                    first = triple(0, j, k);
                }
            }
        }
        out.push_back(count_axiom("fusion unit", bad, first));
    }
    {
        std::size_t cyc = 0;
        std::size_t dua = 0;
        std::string first_cyc;
        std::string first_dua;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (N(i, j, k) != N(j, k, i) && cyc++ == 0) {
                        first_cyc = triple(i, j, k);
                    }
                    if (N(i, j, k) != N(raw.dual[i], raw.dual[j], raw.dual[k]) && dua++ == 0) {
                        first_dua = triple(i, j, k);
                    }
                }
            }
        }
        out.push_back(count_axiom("fusion cyclic", cyc, first_cyc));
        out.push_back(count_axiom("fusion duality", dua, first_dua));
    }
    {
        // (i j) k = i (j k) with multiplicities N[a][b][dual c] of c in a (x) b.
        std::size_t bad = 0;
        std::string first;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t l = 0; l < n; ++l) {
                        std::uint64_t lhs = 0;
                        std::uint64_t rhs = 0;
                        for (std::size_t m = 0; m < n; ++m) {
                            lhs += std::uint64_t{N(i, j, raw.dual[m])} * N(m, k, raw.dual[l]);
                            rhs += std::uint64_t{N(j, k, raw.dual[m])} * N(i, m, raw.dual[l]);
                        }
                        if (lhs != rhs && bad++ == 0) {
                            first = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                                    "," + std::to_string(l) + ")";
                        }
                    }
                }
            }
        }
        out.push_back(count_axiom("fusion associativity", bad, first));
    }
    return out;
}

std::string fingerprint(const RawModularData& raw)
{
    std::ostringstream os;
    char buf[64];
    os << raw.rank << ';';
    for (const auto& name : raw.names) {
        os << name << ',';
    }
    for (auto d : raw.dual) {
        os << d << ',';
    }
    os << raw.central_charge.get_str() << ';';
    for (const auto& w : raw.weights) {
        os << w.get_str() << ',';
    }
    auto put = [&](std::complex<double> z) {
        std::snprintf(buf, sizeof buf, "%.17g:%.17g,", z.real(), z.imag());
        os << buf;
    };
    for (const auto& t : raw.twists) {
        put(t);
    }
    for (Eigen::Index i = 0; i < raw.s.rows(); ++i) {
        for (Eigen::Index j = 0; j < raw.s.cols(); ++j) {
            put(raw.s(i, j));
        }
    }
    for (std::size_t i = 0; i < raw.rank; ++i) {
        for (std::size_t j = 0; j < raw.rank; ++j) {
            for (std::size_t k = 0; k < raw.rank; ++k) {
                os << raw.fusion(i, j, k) << ',';
            }
        }
    }
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ModularDatum::ModularDatum(RawModularData raw, Tolerances tol, Strictness strictness)
    : raw_(std::move(raw)), tol_(tol), strictness_(strictness), fingerprint_(modfunctor::fingerprint(raw_))
{
}

ModularDatum ModularDatum::validated(RawModularData raw, Tolerances tol, Strictness strictness)
{
    for (auto& check : audit_axioms(raw, tol, strictness)) {
        if (!check.passed) {
            throw axiom_violation(check.name, check.residual, check.detail);
        }
    }
    return ModularDatum(std::move(raw), tol, strictness);
}

ModularDatum ModularDatum::unchecked(RawModularData raw, Tolerances tol, Strictness strictness)
{
    return ModularDatum(std::move(raw), tol, strictness);
}

std::optional<Label> ModularDatum::find_label(std::string_view name) const
{
    for (std::size_t i = 0; i < raw_.names.size(); ++i) {
        if (raw_.names[i] == name) {
            return Label{static_cast<std::uint32_t>(i)};
        }
    }
    return std::nullopt;
}

Label ModularDatum::resolve_label(std::string_view token) const
{
    if (auto l = find_label(token)) {
        return *l;
    }
    std::uint32_t i{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), i);
    if (ec == std::errc{} && ptr == token.data() + token.size() && i < rank()) {
        return Label{i};
    }
    throw unknown_label(std::string(token));
}

std::vector<Label> ModularDatum::labels() const
{
    std::vector<Label> out;
    for (std::uint32_t i = 0; i < rank(); ++i) {
        out.emplace_back(i);
    }
    return out;
}

Eigen::MatrixXcd ModularDatum::charge_conjugation() const
{
    auto n = static_cast<Eigen::Index>(rank());
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        C(i, raw_.dual[static_cast<std::size_t>(i)]) = 1.0;
    }
    return C;
}

Eigen::MatrixXcd ModularDatum::t_matrix() const
{
    auto n = static_cast<Eigen::Index>(rank());
    auto shift = unit_phase(-raw_.central_charge / 24);
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        T(i, i) = raw_.twists[static_cast<std::size_t>(i)] * shift;
    }
    return T;
}

ModularDatum parse_modular_datum(std::string_view text, Tolerances tol, Strictness strictness)
{
    return ModularDatum::validated(read_modular_data(text), tol, strictness);
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot read '" + path.string() + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ModularDatum load_modular_datum(const std::filesystem::path& path, Tolerances tol, Strictness strictness)
{
    return parse_modular_datum(read_text_file(path), tol, strictness);
}

VerlindeEvaluation evaluate_verlinde(const ModularDatum& d)
{
    const auto n = d.rank();
    const auto& S = d.s_matrix();
    VerlindeEvaluation out;
    out.rounded = FusionTensor(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto kd = d.dual(Label{static_cast<std::uint32_t>(k)}).index;
                std::complex<double> v = 0.0;
                for (Eigen::Index m = 0; m < S.cols(); ++m) {
                    v += S(i, m) * S(j, m) * std::conj(S(kd, m)) / S(0, m);
                }
                double r = std::round(v.real());
                double defect = std::abs(v - r);
                if (r < 0.0) {
                    defect = std::max(defect, -r);
                    r = 0.0;
                }
                if (!out.worst_entry || defect > out.max_integrality_defect) {
                    out.max_integrality_defect = defect;
                    out.worst_entry = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                       static_cast<std::uint32_t>(k)};
                }
                out.rounded(i, j, k) = static_cast<std::uint32_t>(r);
            }
        }
    }
    return out;
}

FusionTensor verlinde_coefficients(const ModularDatum& d)
{
    auto ev = evaluate_verlinde(d);
    if (ev.max_integrality_defect > d.tolerances().integer) {
        const auto& e = *ev.worst_entry;
        throw non_integral_coefficient("Verlinde coefficient " + triple(e[0], e[1], e[2]) +
                                           " is not a non-negative integer (defect " +
                                           std::to_string(ev.max_integrality_defect) + ")",
                                       ev.max_integrality_defect);
    }
    const auto n = d.rank();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (ev.rounded(i, j, k) != d.fusion_tensor()(i, j, k)) {
                    throw fusion_mismatch("N" + triple(i, j, k) + ": Verlinde gives " +
                                          std::to_string(ev.rounded(i, j, k)) + ", declared " +
                                          std::to_string(d.fusion_tensor()(i, j, k)));
                }
            }
        }
    }
    return ev.rounded;
}

std::vector<Label> mueger_center(const ModularDatum& d)
{
    const auto& S = d.s_matrix();
    const double tol = d.tolerances().axiom;
    std::vector<Label> out;
    for (Eigen::Index i = 0; i < S.rows(); ++i) {
        const auto dim = S(i, 0) / S(0, 0);
        bool transparent = true;
        for (Eigen::Index j = 0; j < S.cols() && transparent; ++j) {
            transparent = std::abs(S(i, j) - dim * S(0, j)) <= tol;
        }
        if (transparent) {
            out.emplace_back(static_cast<std::uint32_t>(i));
        }
    }
    return out;
}

RankIdentity rank_identity(const ModularDatum& d)
{
    return {mueger_center(d).size(), d.rank()};
}

} // namespace modfunctor
