#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "modfunctor/errors.hpp"
#include "modfunctor/sewing_series.hpp"

using namespace modfunctor;
using namespace modfunctor::testing;

namespace {

SplitParameters random_split(std::mt19937_64& rng)
{
    long p = std::uniform_int_distribution<long>(-50, 50)(rng);
    long q = std::uniform_int_distribution<long>(1, 37)(rng);
    mpq_class a(p, q);
    a.canonicalize();
    return SplitParameters(a, 1 - a);
}

// Both sides expanded degree by degree as dims[d] x dims[d] coefficient blocks
// for the x and D x components; the identity of S_d is the unit matrix.
struct Blocks {
    std::vector<std::vector<std::vector<mpq_class>>> on_x;
    std::vector<std::vector<std::vector<mpq_class>>> on_dx;
};

Blocks expand(const std::vector<unsigned>& dims, unsigned n, const mpq_class& w, const mpq_class& plus,
              const mpq_class& minus, bool lhs)
{
    Blocks out;
    for (unsigned d = 0; d <= n; ++d) {
        auto k = dims[d];
        std::vector<std::vector<mpq_class>> x(k, std::vector<mpq_class>(k, 0));
        auto dx = x;
        for (unsigned b = 0; b < k; ++b) {
            if (lhs) {
                // q^d differentiates to d q^d; L0 acts by d + w on S_d and on its dual
                x[b][b] = mpq_class(d) - plus * (d + w) - minus * (d + w);
            } else {
                x[b][b] = -w;
            }
            dx[b][b] = 1;
        }
        out.on_x.push_back(x);
        out.on_dx.push_back(dx);
    }
    return out;
}

Blocks from_expression(const FormalExpression& e, const std::vector<unsigned>& dims, unsigned n)
{
    Blocks out;
    for (unsigned d = 0; d <= n; ++d) {
        out.on_x.emplace_back(dims[d], std::vector<mpq_class>(dims[d], 0));
        out.on_dx.emplace_back(dims[d], std::vector<mpq_class>(dims[d], 0));
    }
    for (const auto& [key, c] : e.terms()) {
        REQUIRE(key.q_power == key.degree);
        auto& block = key.d_power == 0 ? out.on_x : out.on_dx;
        block[key.degree][key.basis][key.basis] += c;
    }
    return out;
}

bool same(const Blocks& a, const Blocks& b)
{
    return a.on_x == b.on_x && a.on_dx == b.on_dx;
}

} // namespace

TEST_CASE("sewing element construction")
{
    GradedModule one{unit_label, 7, {1}};
    auto e = build_sewing_element(one, 0);
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].degree == 0);

    GradedModule m{unit_label, 0, {1, 1, 2}};
    auto e2 = build_sewing_element(m, 2);
    REQUIRE(e2.terms.size() == 4);
    CHECK(e2.terms[0].degree == 0);
    CHECK(e2.terms[1].degree == 1);
    CHECK(e2.terms[2].degree == 2);
    CHECK(e2.terms[3].degree == 2);
    CHECK(e2.terms[3].basis == 1);
    CHECK(build_sewing_element(m, 0).terms.size() == 1);
    CHECK_THROWS_AS(build_sewing_element(m, 3), truncation_too_large);
}

TEST_CASE("split parameters sum to one")
{
    CHECK_NOTHROW(SplitParameters(mpq_class(3, 7), mpq_class(4, 7)));
    CHECK_THROWS_AS(SplitParameters(mpq_class(1, 2), mpq_class(1, 3)), invalid_split);
}

TEST_CASE("q d/dq on the sewing element")
{
    const SplitParameters whole(1, 0), half(mpq_class(1, 2), mpq_class(1, 2));
    GradedModule vac{unit_label, 0, {1, 0, 1, 1, 2}};
    CHECK(apply_q_del_q(build_sewing_element(vac, 4), whole).is_zero());

    GradedModule tau{Label{1}, mpq_class(2, 5), {1, 1}};
    auto e = build_sewing_element(tau, 1);
    auto r = apply_q_del_q(e, whole);
    REQUIRE(r.terms().size() == 2);
    for (const auto& [key, c] : r.terms()) {
        CHECK(c == mpq_class(-2, 5));
        CHECK(key.d_power == 0);
    }
    CHECK(apply_q_del_q(e, half) == r);
}

TEST_CASE("q d/dq identity on small modules")
{
    GradedModule trivial{unit_label, 0, {1}};
    auto entry = verify_qdq_identity(trivial, 0, SplitParameters(1, 0));
    CHECK(entry.passed);
    CHECK(entry.residual.is_exact_zero());

    std::mt19937_64 rng(47);
    GradedModule m{Label{1}, mpq_class(2, 5), {1, 1, 2}};
    for (int k = 0; k < 10; ++k) {
        auto split = random_split(rng);
        CHECK(verify_qdq_identity(m, 2, split).passed);
        auto sides = qdq_sides(build_sewing_element(m, 2), split);
        CHECK(same(from_expression(sides.lhs, m.dims, 2),
                   expand(m.dims, 2, m.weight, split.alpha_plus(), split.alpha_minus(), true)));
        CHECK(same(from_expression(sides.rhs, m.dims, 2),
                   expand(m.dims, 2, m.weight, split.alpha_plus(), split.alpha_minus(), false)));
    }
}

TEST_CASE("perturbed weight is caught at degree 0")
{
    GradedModule m{Label{1}, mpq_class(2, 5), {1, 1, 2}};
    try {
        verify_qdq_identity(m, 2, SplitParameters(1, 0), mpq_class(3, 5));
        FAIL("expected identity_violation");
    } catch (const identity_violation& e) {
        CHECK(e.degree() == 0);
        CHECK(e.basis() == 0);
    }
}

TEST_CASE("property: large modules, random splits, exact zero residual")
{
    std::mt19937_64 rng(53);
    const std::vector<unsigned> dims{3, 4, 5, 5, 6, 6, 7};
    for (const auto& w : {mpq_class(0), mpq_class(2, 5), mpq_class(1, 16), mpq_class(-3, 8), mpq_class(13, 3)}) {
        GradedModule m{Label{0}, w, dims};
        std::optional<FormalExpression> first;
        for (int k = 0; k < 10; ++k) {
            auto split = random_split(rng);
            auto entry = verify_qdq_identity(m, 6, split);
            CHECK(entry.passed);
            CHECK(entry.residual.is_exact_zero());
            auto sides = qdq_sides(build_sewing_element(m, 6), split);
            CHECK((sides.lhs - sides.rhs).is_zero());
            if (!first) {
                first = sides.lhs;
            }
            CHECK(sides.lhs == *first);
            CHECK(same(from_expression(sides.lhs, dims, 6),
                       expand(dims, 6, w, split.alpha_plus(), split.alpha_minus(), true)));
        }
    }
}

TEST_CASE("property: the identity holds per elementary tensor")
{
    GradedModule m{Label{2}, mpq_class(1, 16), {3, 4, 5, 5, 6, 6, 7}};
    auto e = build_sewing_element(m, 6);
    const SplitParameters split(mpq_class(5, 9), mpq_class(4, 9));
    FormalExpression lhs_sum, rhs_sum;
    for (const auto& t : e.terms) {
        SewingElement single{e.truncation, e.weight, {t}};
        auto sides = qdq_sides(single, split);
        CHECK(sides.lhs == sides.rhs);
        for (const auto& [k, c] : sides.lhs.terms()) {
            lhs_sum.add(k, c);
        }
        for (const auto& [k, c] : sides.rhs.terms()) {
            rhs_sum.add(k, c);
        }
    }
    auto whole = qdq_sides(e, split);
    CHECK(lhs_sum == whole.lhs);
    CHECK(rhs_sum == whole.rhs);
}

TEST_CASE("graded module files")
{
    auto fib = load("fibonacci.md");
    auto ms = parse_graded_modules("# modules\nmodule 1 weight 0 dims 1 0 1\nmodule tau weight 2/5 dims 1 1 1 2\n", fib);
    REQUIRE(ms.size() == 2);
    CHECK(ms[1].label == Label{1});
    CHECK(ms[1].weight == mpq_class(2, 5));
    CHECK(ms[1].dims == std::vector<unsigned>{1, 1, 1, 2});
    CHECK_THROWS_AS(parse_graded_modules("module tau weight 1/5 dims 1\n", fib), syntax_error);
    CHECK_THROWS_AS(parse_graded_modules("module tau weight 2/5 dims 0 1\n", fib), syntax_error);
    CHECK_THROWS_AS(parse_graded_modules("module tau weight 2/5\n", fib), syntax_error);
    CHECK_THROWS_AS(parse_graded_modules("module tau weight 2/x dims 1\n", fib), syntax_error);
    CHECK_THROWS_AS(parse_graded_modules("module sigma weight 2/5 dims 1\n", fib), unknown_label);

    for (const auto& m : default_graded_modules(fib)) {
        auto entry = check_qdq_identity(fib, m, 6, SplitParameters(mpq_class(1, 2), mpq_class(1, 2)));
        CHECK(entry.passed);
    }
    CHECK_THROWS_AS(check_qdq_identity(fib, GradedModule{Label{1}, 0, {1}}, 3, SplitParameters(1, 0)),
                    truncation_too_large);
}
