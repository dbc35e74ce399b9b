#include "cmv/function_id.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <utility>

#include "cmv/errors.hpp"

namespace cmv {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 15> kNames{{
    {Family::PhiScaled, "phi-scaled"},
    {Family::PhiQ, "phi-q"},
    {Family::PhiQInv, "phi-q-inv"},
    {Family::FAlphaLog, "f-alpha"},
    {Family::FAlpha, "f-alpha-fn"},
    {Family::Fm, "f-m"},
    {Family::Gm, "g-m"},
    {Family::ThetaM, "theta-m"},
    {Family::Theta1, "theta1"},
    {Family::GnAux, "g-n"},
    {Family::KernelK1, "k1"},
    {Family::KernelK2, "k2"},
    {Family::KernelK3, "k3"},
    {Family::HLH, "H"},
    {Family::SFun, "s"},
}};

int parse_int(std::string_view flag, const std::string& text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(std::string(flag) + " expects an integer, got '" + text + "'");
  }
  return v;
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [family, name] : kNames) {
    if (family == f) return name;
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "phi") return Family::PhiScaled;
  for (const auto& [family, text] : kNames) {
    if (text == name) return family;
  }
  throw ParseError("unknown function family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families = [] {
    std::vector<Family> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
  }();
  return families;
}

FunctionId FunctionId::phi_scaled(int m, const BigReal& alpha) {
  FunctionId id;
  id.family = Family::PhiScaled;
  id.m = m;
  id.alpha = alpha;
  return id;
}

FunctionId FunctionId::phi_q(const BigReal& q) {
  FunctionId id;
  id.family = Family::PhiQ;
  id.q = q;
  return id;
}

FunctionId FunctionId::phi_q_inv(const BigReal& q) {
  FunctionId id;
  id.family = Family::PhiQInv;
  id.q = q;
  return id;
}

FunctionId FunctionId::f_alpha_log(const BigReal& alpha) {
  FunctionId id;
  id.family = Family::FAlphaLog;
  id.alpha = alpha;
  return id;
}

FunctionId FunctionId::f_alpha(const BigReal& alpha) {
  FunctionId id;
  id.family = Family::FAlpha;
  id.alpha = alpha;
  return id;
}

FunctionId FunctionId::f_m(int m) {
  FunctionId id;
  id.family = Family::Fm;
  id.m = m;
  return id;
}

FunctionId FunctionId::g_m(int m) {
  FunctionId id;
  id.family = Family::Gm;
  id.m = m;
  return id;
}

FunctionId FunctionId::theta_m(int m) {
  FunctionId id;
  id.family = Family::ThetaM;
  id.m = m;
  return id;
}

FunctionId FunctionId::theta1() { return of(Family::Theta1); }

FunctionId FunctionId::g_n(int n) {
  FunctionId id;
  id.family = Family::GnAux;
  id.n_aux = n;
  return id;
}

FunctionId FunctionId::of(Family family) {
  FunctionId id;
  id.family = family;
  return id;
}

bool FunctionId::uses_m() const {
  return family == Family::PhiScaled || family == Family::Fm || family == Family::Gm || family == Family::ThetaM;
}

bool FunctionId::uses_alpha() const {
  return family == Family::PhiScaled || family == Family::FAlphaLog || family == Family::FAlpha;
}

bool FunctionId::uses_q() const { return family == Family::PhiQ || family == Family::PhiQInv; }

bool FunctionId::uses_n() const { return family == Family::GnAux; }

void FunctionId::validate() const {
  const std::string name(family_name(family));
  if (uses_m() && m < 0) throw DomainError(name + ": m must be >= 0, got " + std::to_string(m));
  if ((family == Family::Gm || family == Family::ThetaM) && m < 1) {
    throw DomainError(name + ": m must be >= 1, got " + std::to_string(m));
  }
  if (uses_alpha() && !alpha.is_finite()) throw DomainError(name + ": alpha must be finite");
  if (family == Family::PhiQ && !(q > 0 && q < 1)) {
    throw DomainError(name + ": q must lie in (0, 1), got " + q.str(20));
  }
  if (family == Family::PhiQInv && !(q > 1 && q.is_finite())) {
    throw DomainError(name + ": q must be > 1, got " + q.str(20));
  }
  if (uses_n() && n_aux < 1) throw DomainError(name + ": n must be >= 1, got " + std::to_string(n_aux));
}

std::string FunctionId::to_string() const {
  std::ostringstream out;
  out << family_name(family);
  if (uses_m()) out << " --m " << m;
  if (uses_alpha()) out << " --alpha " << alpha.str();
  if (uses_q()) out << " --q " << q.str();
  if (uses_n()) out << " --n " << n_aux;
  return out.str();
}

bool operator==(const FunctionId& a, const FunctionId& b) {
  if (a.family != b.family) return false;
  if (a.uses_m() && a.m != b.m) return false;
  if (a.uses_alpha() && !(a.alpha == b.alpha)) return false;
  if (a.uses_q() && !(a.q == b.q)) return false;
  if (a.uses_n() && a.n_aux != b.n_aux) return false;
  return true;
}

FunctionId parse_function_id(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw ParseError("empty function spec");
  FunctionId id;
  id.family = parse_family(tokens[0]);
  for (std::size_t i = 1; i < tokens.size(); i += 2) {
    const std::string& flag = tokens[i];
    if (i + 1 >= tokens.size()) throw ParseError("flag " + flag + " is missing its value");
    const std::string& value = tokens[i + 1];
    if (flag == "--m") {
      id.m = parse_int(flag, value);
    } else if (flag == "--n") {
      id.n_aux = parse_int(flag, value);
    } else if (flag == "--alpha") {
      id.alpha = BigReal::parse(value);
    } else if (flag == "--q") {
      id.q = BigReal::parse(value);
    } else {
      throw ParseError("unknown flag '" + flag + "' in function spec");
    }
  }
  // A q above 1 selects the reciprocal form.
  if (id.family == Family::PhiQ && id.q > 1) id.family = Family::PhiQInv;
  return id;
}

FunctionId parse_function_id(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return parse_function_id(tokens);
}

}  // namespace cmv
