// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gaussent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

constexpr double kRadicandTol = 1e-12;
constexpr double kNegativityTol = 1e-9;

double checked_sqrt(double radicand, double tol, const char* what) {
  if (radicand < -tol) {
    std::ostringstream msg;
    msg.precision(12);
    msg << what << " radicand is negative: " << radicand;
    throw NumericalDomainError(msg.str());
  }
  return std::sqrt(std::max(radicand, 0.0));
}

void require_symmetric(const InvariantSet& inv, double sym_tol) {
  if (!is_symmetric(inv, sym_tol)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "entanglement of formation needs a symmetric state, got I1 = " << inv.i1()
        << ", I2 = " << inv.i2();
    throw NotApplicableError(msg.str());
  }
}

double eof_from(double i1, double abs_i3, double i4) {
  const double inner = checked_sqrt(i4 + 2.0 * i1 * abs_i3, kRadicandTol, "E_f inner");
  // x^2 = I1 + |I3| - inner, rationalized against cancellation for strongly
  // squeezed states.
  const double outer = i1 + abs_i3 + inner;
  const double x2 = outer > 0.0 ? (i1 * i1 + abs_i3 * abs_i3 - i4) / outer : i1 + abs_i3 - inner;
  const double x = checked_sqrt(x2, kRadicandTol, "E_f outer");
  return eof_function(x);
}

}  // namespace

SimonResult simon_separable(const InvariantSet& inv) {
  const double i1 = inv.i1();
  const double i2 = inv.i2();
  const double i3 = inv.i3();
  const double one_minus = 1.0 - std::abs(i3);
  SimonResult r;
  r.margin = i1 * i2 + one_minus * one_minus - inv.i4() - i1 - i2;
  r.separable = i3 >= 0.0 || r.margin >= 0.0;
  return r;
}

double eof_function(double x) {
  if (x >= 1.0) return 0.0;
  if (x <= 0.0) throw NumericalDomainError("E_f argument must be positive");
  const double sx = std::sqrt(x);
  const double c_plus = (1.0 / sx + sx) * (1.0 / sx + sx) / 4.0;
  const double c_minus = (1.0 / sx - sx) * (1.0 / sx - sx) / 4.0;
  const double minus_term = c_minus > 0.0 ? c_minus * std::log2(c_minus) : 0.0;
  return c_plus * std::log2(c_plus) - minus_term;
}

bool is_symmetric(const InvariantSet& inv, double sym_tol) {
  return std::abs(inv.i1() - inv.i2()) <= sym_tol * std::max(inv.i1(), inv.i2());
}

double eof_symmetric(const InvariantSet& inv, double sym_tol) {
  require_symmetric(inv, sym_tol);
  return eof_from(inv.i1(), std::abs(inv.i3()), inv.i4());
}

double eof_lower_bound(const InvariantSet& inv, double sym_tol) {
  require_symmetric(inv, sym_tol);
  return eof_from(inv.i1(), std::abs(inv.i3()), 0.0);
}

NegativityResult log_negativity(const InvariantSet& inv) {
  const double delta = inv.i1() + inv.i2() - 2.0 * inv.i3();
  const double det = inv.det_quad();
  const double root = checked_sqrt(delta * delta - 4.0 * det, kNegativityTol, "negativity");
  // Written as 2 det / (delta + root) to avoid cancellation for large delta.
  const double denom = delta + root;
  const double nu2 = denom > 0.0 ? 2.0 * det / denom : 0.5 * (delta - root);
  NegativityResult r;
  r.nu_tilde_minus = checked_sqrt(nu2, kNegativityTol, "nu~-");
  r.log_negativity = std::max(0.0, -std::log2(r.nu_tilde_minus));
  return r;
}

EntanglementReport assess_entanglement(const InvariantSet& inv, double sym_tol) {
  EntanglementReport report;
  const SimonResult simon = simon_separable(inv);
  report.separable = simon.separable;
  report.simon_margin = simon.margin;
  const NegativityResult neg = log_negativity(inv);
  report.log_negativity = neg.log_negativity;
  report.nu_tilde_minus = neg.nu_tilde_minus;
  if (is_symmetric(inv, sym_tol)) {
    report.eof = eof_symmetric(inv, sym_tol);
    report.eof_lower_bound = eof_lower_bound(inv, sym_tol);
  }
  return report;
}

}  // namespace gaussent
