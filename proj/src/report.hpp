#pragma once
// Report emission: an insertion-ordered JSON value with fixed float
// formatting (17 significant digits) so identical configurations produce
// byte-identical files, plus CSV helpers and atomic writes.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "identity_suite.hpp"
#include "spectral.hpp"

namespace homlie::report {

inline constexpr const char* kToolVersion = "homlie 1.0.0";

std::string format_double(double x);  // %.17g; throws on non-finite values

class Json {
 public:
  static Json object();
  static Json array();
  static Json number(double v);
  static Json integer(std::int64_t v);
  static Json uinteger(std::uint64_t v);
  static Json boolean(bool v);
  static Json string(std::string v);
  static Json null();
  static Json complex(Cplx z);  // {"re": ..., "im": ...}

  Json& set(const std::string& key, Json v);  // object insert, insertion order kept
  Json& push(Json v);                         // array append

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { object, array, number, integer, uinteger, boolean, string, null };
  Kind kind_ = Kind::null;
  double num_ = 0.0;
  std::int64_t int_ = 0;
  std::uint64_t uint_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::pair<std::string, Json>> members_;
  std::vector<Json> items_;

  void dump_to(std::string& out, int indent, int depth) const;
};

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// External formats.
Json identity_report_json(const algebra::IdentityReport& rep);
// Modes serialised ascending by Im(lambda), then Re.
Json decomposition_json(const bohr::SpectralDecomposition& dec, std::uint64_t seed);
std::string mode_coefficient_csv(const bohr::BohrMode& mode);  // row, col, re, im
std::string orbit_csv(const dynamics::OrbitSample& orbit, Index row, Index col);

}  // namespace homlie::report
