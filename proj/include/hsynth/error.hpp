#ifndef HSYNTH_ERROR_HPP
#define HSYNTH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hsynth {

/// Base of every library error; carries the originating module name so the
/// CLI can report where a pipeline stage failed.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

/// A violated precondition on an argument (bad node count, x == y, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Mismatched sizes between operator, density, and trace.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// One or more geometric constraints on a scenario failed. Every violation is
/// collected so the user sees them all at once.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations, std::string module = "geometry")
        : Error(std::move(module), join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "scenario violates " + std::to_string(v.size()) + " constraint(s)";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
    std::vector<std::string> violations_;
};

/// Scenario file could not be read; line is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(int line, std::string field, const std::string& what)
        : Error("scenario-file", format(line, field, what)), line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(int line, const std::string& field, const std::string& what) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!field.empty()) out += "field '" + field + "': ";
        return out + what;
    }
    int line_;
    std::string field_;
};

/// Requested accuracy lies at or below what the discretized operator can reach.
class InfeasibleError : public Error {
public:
    InfeasibleError(double epsilon, double floor, const std::string& what)
        : Error("solver", what), epsilon_(epsilon), floor_(floor) {}

    double epsilon() const noexcept { return epsilon_; }
    double floor() const noexcept { return floor_; }

private:
    double epsilon_;
    double floor_;
};

/// Factorization or iteration failure.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace hsynth

#endif  // HSYNTH_ERROR_HPP
