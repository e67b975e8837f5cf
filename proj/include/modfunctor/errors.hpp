#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace modfunctor {

// Base of every error raised by the library. Input problems (syntax, shape)
// and mathematical failures (axioms, identities) are separate subtrees so the
// CLI can map them to distinct exit codes.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class input_error : public error {
public:
    using error::error;
};

class check_failure : public error {
public:
    using error::error;
};

class syntax_error : public input_error {
public:
    syntax_error(std::size_t line, const std::string& what)
        : input_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class dimension_mismatch : public input_error {
public:
    using input_error::input_error;
};

class unknown_label : public input_error {
public:
    explicit unknown_label(const std::string& name) : input_error("unknown label '" + name + "'") {}
};

class length_mismatch : public input_error {
public:
    using input_error::input_error;
};

class invalid_graph : public input_error {
public:
    using input_error::input_error;
};

class boundary_mismatch : public input_error {
public:
    using input_error::input_error;
};

class unstable_pair : public input_error {
public:
    unstable_pair(unsigned genus, std::size_t legs)
        : input_error("unstable pair (g, n) = (" + std::to_string(genus) + ", " + std::to_string(legs) + ")"),
          genus_(genus), legs_(legs) {}

    unsigned genus() const noexcept { return genus_; }
    std::size_t legs() const noexcept { return legs_; }

private:
    unsigned genus_;
    std::size_t legs_;
};

class truncation_too_large : public input_error {
public:
    using input_error::input_error;
};

class invalid_split : public input_error {
public:
    using input_error::input_error;
};

class axiom_violation : public check_failure {
public:
    axiom_violation(std::string axiom, double residual, const std::string& detail)
        : check_failure("axiom '" + axiom + "' violated (residual " + std::to_string(residual) + "): " + detail),
          axiom_(std::move(axiom)), residual_(residual) {}

    const std::string& axiom() const noexcept { return axiom_; }
    double residual() const noexcept { return residual_; }

private:
    std::string axiom_;
    double residual_;
};

class non_integral_coefficient : public check_failure {
public:
    non_integral_coefficient(const std::string& what, double defect) : check_failure(what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

class fusion_mismatch : public check_failure {
public:
    using check_failure::check_failure;
};

class diagonalization_failure : public check_failure {
public:
    diagonalization_failure(const std::string& what, double residual) : check_failure(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class identity_violation : public check_failure {
public:
    identity_violation(unsigned degree, unsigned basis, const std::string& what)
        : check_failure(what), degree_(degree), basis_(basis) {}

    unsigned degree() const noexcept { return degree_; }
    unsigned basis() const noexcept { return basis_; }

private:
    unsigned degree_;
    unsigned basis_;
};

} // namespace modfunctor
