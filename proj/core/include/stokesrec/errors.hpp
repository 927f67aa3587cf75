#pragma once

#include <stdexcept>
#include <string>

namespace stokesrec {

// Error categories, mapped to CLI exit codes: input/geometry problems -> 2,
// linear-algebra failures -> 3, iteration failures -> 4.
enum class errc {
  invalid_input,
  resolution,
  geometry,
  parse,
  validation,
  solver,
  ill_posed,
  singular_diagonal,
  accuracy,
  convergence,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

  int exit_code() const {
    switch (code_) {
      case errc::invalid_input:
      case errc::resolution:
      case errc::geometry:
      case errc::parse:
      case errc::validation:
        return 2;
      case errc::convergence:
        return 4;
      default:
        return 3;
    }
  }

private:
  errc code_;
};

struct invalid_input_error : error {
  explicit invalid_input_error(const std::string& w) : error(errc::invalid_input, w) {}
};
struct resolution_error : error {
  explicit resolution_error(const std::string& w) : error(errc::resolution, w) {}
};
struct geometry_error : error {
  explicit geometry_error(const std::string& w) : error(errc::geometry, w) {}
};
struct parse_error : error {
  explicit parse_error(const std::string& w) : error(errc::parse, w) {}
};
struct validation_error : error {
  explicit validation_error(const std::string& w) : error(errc::validation, w) {}
};
struct solver_error : error {
  explicit solver_error(const std::string& w) : error(errc::solver, w) {}
};
struct ill_posed_error : error {
  explicit ill_posed_error(const std::string& w) : error(errc::ill_posed, w) {}
};
struct singular_diagonal_error : error {
  explicit singular_diagonal_error(const std::string& w) : error(errc::singular_diagonal, w) {}
};
struct accuracy_error : error {
  explicit accuracy_error(const std::string& w) : error(errc::accuracy, w) {}
};
struct convergence_error : error {
  explicit convergence_error(const std::string& w) : error(errc::convergence, w) {}
};
struct internal_error : error {
  explicit internal_error(const std::string& w) : error(errc::internal, w) {}
};

}  // namespace stokesrec
