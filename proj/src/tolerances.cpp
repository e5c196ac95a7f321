#include "adscurve/tolerances.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "adscurve/error.hpp"

namespace adscurve {

namespace {

double* field(Tolerances& t, std::string_view key) {
  if (key == "causal") return &t.causal;
  if (key == "orth") return &t.orth;
  if (key == "hopf") return &t.hopf;
  if (key == "framed") return &t.framed;
  if (key == "framed_catalog") return &t.framed_catalog;
  if (key == "sing") return &t.sing;
  if (key == "bisect") return &t.bisect;
  if (key == "drift") return &t.drift;
  if (key == "congr") return &t.congr;
  if (key == "class") return &t.cls;
  if (key == "root") return &t.root;
  if (key == "memb") return &t.memb;
  return nullptr;
}

double parse_positive(std::string_view text, std::string_view key) {
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v) || v <= 0)
    throw Error(ErrorCode::InvalidArgument,
                "tolerance '" + std::string(key) + "' needs a positive number, got '" + s + "'");
  return v;
}

}  // namespace

void Tolerances::set(std::string_view key, double value) {
  double* f = field(*this, key);
  if (!f) throw Error(ErrorCode::InvalidArgument, "unknown tolerance key '" + std::string(key) + "'");
  if (!std::isfinite(value) || value <= 0)
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  *f = value;
}

double Tolerances::get(std::string_view key) const {
  double* f = field(const_cast<Tolerances&>(*this), key);
  if (!f) throw Error(ErrorCode::InvalidArgument, "unknown tolerance key '" + std::string(key) + "'");
  return *f;
}

void Tolerances::apply(std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "expected key=value, got '" + std::string(assignment) + "'");
  auto key = assignment.substr(0, eq);
  set(key, parse_positive(assignment.substr(eq + 1), key));
}

void Tolerances::apply_environment() {
  for (const auto& key : keys()) {
    std::string var = "ADSCURVE_TOL_";
    for (char c : key) var += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (const char* v = std::getenv(var.c_str())) set(key, parse_positive(v, key));
  }
}

std::vector<std::string> Tolerances::keys() {
  return {"causal", "orth", "hopf", "framed", "framed_catalog", "sing",
          "bisect", "drift", "congr", "class", "root", "memb"};
}

}  // namespace adscurve
