#include "modfunctor/sewing_series.hpp"

#include <charconv>
#include <sstream>

#include "modfunctor/errors.hpp"

namespace modfunctor {

std::vector<GradedModule> default_graded_modules(const ModularDatum& d)
{
    std::vector<GradedModule> out;
    for (auto l : d.labels()) {
        out.push_back({l, d.weight(l), {1, 1, 2, 3, 5, 7, 11}});
    }
    return out;
}

namespace {

mpq_class parse_rational(std::size_t line, const std::string& token)
{
    mpq_class q;
    if (token.empty() || q.set_str(token, 10) != 0) {
        throw syntax_error(line, "bad rational '" + token + "'");
    }
    if (q.get_den() == 0) {
        throw syntax_error(line, "zero denominator in '" + token + "'");
    }
    q.canonicalize();
    return q;
}

unsigned parse_unsigned(std::size_t line, const std::string& token)
{
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw syntax_error(line, "bad dimension '" + token + "'");
    }
    return v;
}

} // namespace

std::vector<GradedModule> parse_graded_modules(std::string_view text, const ModularDatum& d)
{
    std::vector<GradedModule> out;
    std::istringstream in{std::string(text)};
    std::string raw_line;
    std::size_t line = 0;
    while (std::getline(in, raw_line)) {
        ++line;
        if (auto hash = raw_line.find('#'); hash != std::string::npos) {
            raw_line.erase(hash);
        }
        std::istringstream ls(raw_line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        if (tok.size() < 6 || tok[0] != "module" || tok[2] != "weight" || tok[4] != "dims") {
            throw syntax_error(line, "expected 'module <label> weight <p>/<q> dims <d0> ...'");
        }
        GradedModule m;
        m.label = d.resolve_label(tok[1]);
        m.weight = parse_rational(line, tok[3]);
        for (std::size_t i = 5; i < tok.size(); ++i) {
            m.dims.push_back(parse_unsigned(line, tok[i]));
        }
        if (m.weight != d.weight(m.label)) {
            throw syntax_error(line, "weight " + m.weight.get_str() + " differs from the datum's " +
                                         d.weight(m.label).get_str());
        }
        if (m.dims[0] == 0) {
            throw syntax_error(line, "degree-0 piece of a simple module is nonzero");
        }
        out.push_back(std::move(m));
    }
    return out;
}

SplitParameters::SplitParameters(mpq_class alpha_plus, mpq_class alpha_minus)
    : plus_(std::move(alpha_plus)), minus_(std::move(alpha_minus))
{
    if (plus_ + minus_ != 1) {
        throw invalid_split("alpha_plus + alpha_minus = " + mpq_class(plus_ + minus_).get_str() + ", not 1");
    }
}

SewingElement build_sewing_element(const GradedModule& m, unsigned n)
{
    if (m.dims.empty() || n > m.max_degree()) {
        throw truncation_too_large("truncation " + std::to_string(n) + " exceeds top degree " +
                                   std::to_string(m.max_degree()));
    }
    SewingElement e{n, m.weight, {}};
    for (unsigned deg = 0; deg <= n; ++deg) {
        for (unsigned b = 0; b < m.dims[deg]; ++b) {
            e.terms.push_back({deg, b});
        }
    }
    return e;
}

void FormalExpression::add(const Key& key, const mpq_class& c)
{
    if (c == 0) {
        return;
    }
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

mpq_class FormalExpression::coefficient(const Key& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

FormalExpression FormalExpression::operator-(const FormalExpression& other) const
{
    FormalExpression out = *this;
    for (const auto& [k, c] : other.terms_) {
        out.add(k, -c);
    }
    return out;
}

FormalExpression apply_q_del_q(const SewingElement& e, const SplitParameters& split)
{
    FormalExpression out;
    for (const auto& t : e.terms) {
        const mpq_class level = t.degree + e.weight;
        FormalExpression::Key key{t.degree, t.basis, 0, t.degree};
        // L0 on e_{d,b} through the z+ direction and on eps_{d,b} through z-
        out.add(key, -split.alpha_plus() * level);
        out.add(key, -split.alpha_minus() * level);
        // derivative of q^d
        out.add(key, mpq_class(t.degree));
    }
    return out;
}

QdqSides qdq_sides(const SewingElement& e, const SplitParameters& split, std::optional<mpq_class> rhs_weight)
{
    QdqSides sides;
    sides.lhs = apply_q_del_q(e, split);
    const mpq_class w = rhs_weight.value_or(e.weight);
    for (const auto& t : e.terms) {
        // Leibniz term acting on the x factor, common to both sides
        sides.lhs.add({t.degree, t.basis, 1, t.degree}, 1);
        sides.rhs.add({t.degree, t.basis, 1, t.degree}, 1);
        sides.rhs.add({t.degree, t.basis, 0, t.degree}, -w);
    }
    return sides;
}

CheckEntry verify_qdq_identity(const GradedModule& m, unsigned n, const SplitParameters& split,
                               std::optional<mpq_class> rhs_weight)
{
    auto e = build_sewing_element(m, n);
    auto sides = qdq_sides(e, split, rhs_weight);
    auto diff = sides.lhs - sides.rhs;
    if (!diff.is_zero()) {
        const auto& [key, c] = *diff.terms().begin();
        std::ostringstream os;
        os << "q d/dq identity fails at degree " << key.degree << " basis " << key.basis << ": lhs "
           << sides.lhs.coefficient(key).get_str() << " vs rhs " << sides.rhs.coefficient(key).get_str();
        throw identity_violation(key.degree, key.basis, os.str());
    }
    CheckEntry entry;
    entry.name = "sewing identity label " + std::to_string(m.label.index) + " n=" + std::to_string(n) +
                 " split " + split.alpha_plus().get_str() + "," + split.alpha_minus().get_str();
    entry.residual = Residual::exact_zero();
    entry.detail = std::to_string(e.terms.size()) + " elementary tensors, " +
                   std::to_string(sides.lhs.terms().size()) + " coefficients equal";
    return entry;
}

CheckEntry check_qdq_identity(const ModularDatum& d, const GradedModule& m, unsigned n,
                              const SplitParameters& split)
{
    const auto name = "sewing identity " + d.name(m.label) + " n=" + std::to_string(n);
    try {
        auto entry = verify_qdq_identity(m, n, split);
        entry.name = name;
        return entry;
    } catch (const identity_violation& e) {
        auto sides = qdq_sides(build_sewing_element(m, n), split);
        mpq_class worst = 0;
        for (const auto& [key, c] : (sides.lhs - sides.rhs).terms()) {
            worst = std::max(worst, mpq_class(abs(c)));
        }
        return CheckEntry{name, false, Residual::of(worst), e.what()};
    }
}

} // namespace modfunctor
