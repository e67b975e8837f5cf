#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "modfunctor/check_report.hpp"
#include "modfunctor/modular_data.hpp"

namespace modfunctor {

// dims[d] is the dimension of the degree-d piece; weight is the lowest L0
// eigenvalue offset of the module.
struct GradedModule {
    Label label;
    mpq_class weight;
    std::vector<unsigned> dims;

    unsigned max_degree() const { return dims.empty() ? 0 : static_cast<unsigned>(dims.size() - 1); }
};

// One per label: dims 1 1 2 3 5 7 11 and the datum's weight.
std::vector<GradedModule> default_graded_modules(const ModularDatum& d);

// Lines `module <label> weight <p>/<q> dims <d0> <d1> ...`; `#` starts a comment.
// Labels resolve against d; the weight must equal the datum's and dims[0] >= 1.
std::vector<GradedModule> parse_graded_modules(std::string_view text, const ModularDatum& d);

class SplitParameters {
public:
    // Throws invalid_split unless alpha_plus + alpha_minus = 1.
    SplitParameters(mpq_class alpha_plus, mpq_class alpha_minus);

    const mpq_class& alpha_plus() const noexcept { return plus_; }
    const mpq_class& alpha_minus() const noexcept { return minus_; }

private:
    mpq_class plus_;
    mpq_class minus_;
};

// e_{d,b} (x) eps_{d,b} q^d, the identity of S_d summed over a basis.
struct ElementaryTensor {
    unsigned degree = 0;
    unsigned basis = 0;
};

struct SewingElement {
    unsigned truncation = 0;
    mpq_class weight;
    std::vector<ElementaryTensor> terms;
};

// Throws truncation_too_large when n exceeds the module's top degree.
SewingElement build_sewing_element(const GradedModule& m, unsigned n);

// Exact formal sum of c * (e_{d,b} (x) eps_{d,b}) (x) D^k x * q^p, where x is an
// inert generic vector of the remaining tensor factor and D its q d/dq action.
class FormalExpression {
public:
    struct Key {
        unsigned degree;
        unsigned basis;
        unsigned d_power;
        unsigned q_power;
        auto operator<=>(const Key&) const = default;
    };

    void add(const Key& key, const mpq_class& c);
    // nonzero coefficients only, ordered by (degree, basis, d_power, q_power)
    const std::map<Key, mpq_class>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    mpq_class coefficient(const Key& key) const;

    FormalExpression operator-(const FormalExpression& other) const;
    friend bool operator==(const FormalExpression&, const FormalExpression&) = default;

private:
    std::map<Key, mpq_class> terms_;
};

// q d/dq applied to the tensor part of e: the split L0 action on both factors
// plus the derivative of q^d. Every term comes out scaled by -weight.
FormalExpression apply_q_del_q(const SewingElement& e, const SplitParameters& split);

struct QdqSides {
    // (q d/dq) E(x)
    FormalExpression lhs;
    // E(q d/dq x) - w E(x)
    FormalExpression rhs;
};

// rhs_weight replaces w on the right-hand side only; used to inject faults.
QdqSides qdq_sides(const SewingElement& e, const SplitParameters& split,
                   std::optional<mpq_class> rhs_weight = std::nullopt);

// Throws identity_violation at the first differing (degree, basis).
CheckEntry verify_qdq_identity(const GradedModule& m, unsigned n, const SplitParameters& split,
                               std::optional<mpq_class> rhs_weight = std::nullopt);

// As verify_qdq_identity, reporting a violation as a failed entry. Input
// errors still throw.
CheckEntry check_qdq_identity(const ModularDatum& d, const GradedModule& m, unsigned n,
                              const SplitParameters& split);

} // namespace modfunctor
