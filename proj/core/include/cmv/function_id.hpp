#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmv/bigreal.hpp"

namespace cmv {

enum class Family {
  PhiScaled,  ///< (-1)^m x^alpha Phi^(m)(x), Phi(x) = x psi'(x) - 1
  PhiQ,       ///< Phi_q(x), 0 < q < 1
  PhiQInv,    ///< Phi_{1/q}(x), q > 1
  FAlphaLog,  ///< phi_alpha = (-log f_alpha)'
  FAlpha,     ///< f_alpha(x) = x^(x(psi(x) - log x) - alpha)
  Fm,         ///< m-th derivative of t^m / (1 - e^-t)
  Gm,         ///< (t f_m(t))'
  ThetaM,     ///< integral_0^t u f_m(u) du
  Theta1,     ///< x (log x - psi(x))
  GnAux,      ///< (-1)^n theta1^(n+1)(x) log x + n!/(4 x^(n+1))
  KernelK1,   ///< e^t (2 - t) - t - 2
  KernelK2,   ///< (1 + t e^t - e^t)^2 - t (e^t - 1)^3 / 4
  KernelK3,   ///< 1 - e^-t - t^2 / (e^t - 1)
  HLH,        ///< Hardy-Littlewood H(z)
  SFun,       ///< s(z) = 1/2 + H(z / 2pi) / pi
};

/// Canonical spelling used on the command line and in reports ("phi-scaled", "H", ...).
std::string_view family_name(Family f);

/// Inverse of family_name; also accepts the alias "phi". Throws ParseError.
Family parse_family(std::string_view name);

/// Every family, in declaration order.
const std::vector<Family>& all_families();

/// A function from the catalog together with its parameters. Parameters that
/// a family does not use are left at their defaults and ignored.
struct FunctionId {
  Family family = Family::PhiScaled;
  int m = 0;          ///< derivative order for PhiScaled, Fm, Gm, ThetaM
  BigReal alpha = 0;  ///< scaling exponent (PhiScaled) or alpha (FAlpha*)
  BigReal q = 0;      ///< q-parameter for PhiQ / PhiQInv
  int n_aux = 1;      ///< order n for GnAux

  static FunctionId phi_scaled(int m, const BigReal& alpha);
  static FunctionId phi_q(const BigReal& q);
  static FunctionId phi_q_inv(const BigReal& q);
  static FunctionId f_alpha_log(const BigReal& alpha);
  static FunctionId f_alpha(const BigReal& alpha);
  static FunctionId f_m(int m);
  static FunctionId g_m(int m);
  static FunctionId theta_m(int m);
  static FunctionId theta1();
  static FunctionId g_n(int n);
  static FunctionId of(Family family);

  /// Throws DomainError when a parameter is out of range for the family.
  void validate() const;

  bool uses_m() const;
  bool uses_alpha() const;
  bool uses_q() const;
  bool uses_n() const;

  /// Human-readable and parseable: "phi-scaled --m 2 --alpha 0".
  std::string to_string() const;

  friend bool operator==(const FunctionId& a, const FunctionId& b);
};

/// Parses "<family> [--m INT] [--alpha DEC] [--q DEC] [--n INT]" from
/// whitespace-separated tokens. Throws ParseError.
FunctionId parse_function_id(const std::vector<std::string>& tokens);
FunctionId parse_function_id(std::string_view text);

}  // namespace cmv
