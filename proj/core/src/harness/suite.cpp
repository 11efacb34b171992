#include "ggv/harness/suite.hpp"

#include "ggv/error.hpp"

namespace ggv {

namespace {

constexpr GkCriterion kGk[] = {GkCriterion::gualtieri, GkCriterion::crf, GkCriterion::bismut};
constexpr ConfGkCriterion kConfGk[] = {ConfGkCriterion::conformal_form, ConfGkCriterion::weyl,
                                       ConfGkCriterion::weyl_bismut};

/// pi = 0 and psi = 0 structurally: the ambient is a classical Hermitian pair (gamma, A).
bool classical_ambient(const Structure& s) {
  if (!s.has_hermitian()) return false;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j)
      if (!s.gcs->pi.at(i, j).is_zero() || !s.metric->psi.at(i, j).is_zero()) return false;
  return true;
}

/// Prefixes condition ids so merged sub-reports stay distinct.
CheckReport prefixed(CheckReport r, const std::string& prefix) {
  for (ConditionResult& c : r.conditions) c.id = prefix + "/" + c.id;
  return r;
}

}  // namespace

Suite parse_suite(const std::string& name) {
  for (Suite s : single_suites())
    if (suite_name(s) == name) return s;
  if (name == "all") return Suite::all;
  throw UsageError("unknown suite '" + name + "'");
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::algebraic: return "algebraic";
    case Suite::integrability: return "integrability";
    case Suite::conf_integrability: return "conf-integrability";
    case Suite::gk: return "gk";
    case Suite::conf_gk: return "conf-gk";
    case Suite::hypersurface: return "hypersurface";
    case Suite::all: return "all";
  }
  return "?";
}

std::vector<Suite> single_suites() {
  return {Suite::algebraic, Suite::integrability, Suite::conf_integrability,
          Suite::gk,        Suite::conf_gk,       Suite::hypersurface};
}

bool applicable(const Structure& s, Suite suite) {
  switch (suite) {
    case Suite::algebraic:
    case Suite::integrability: return s.gcs.has_value();
    case Suite::conf_integrability: return s.gcs.has_value() && s.lee.has_value();
    case Suite::gk: return s.has_hermitian();
    case Suite::conf_gk: return s.has_hermitian() && s.lee.has_value();
    case Suite::hypersurface:
      return s.hyp.has_value() && s.has_hermitian() && (s.lee.has_value() || classical_ambient(s));
    case Suite::all: return true;
  }
  return false;
}

CheckReport run_suite(const Structure& s, Suite suite, const CheckOptions& opts) {
  if (suite == Suite::all) throw UsageError("run_suite takes a single suite");
  if (!applicable(s, suite)) {
    static const char* const needs[] = {"A, pi, sigma", "A, pi, sigma", "A, pi, sigma and a Lee form",
                                        "A, pi, sigma, gamma, psi", "A, pi, sigma, gamma, psi and a Lee form",
                                        "hyp, gamma, psi and a Lee form or a classical ambient"};
    throw UsageError("suite " + suite_name(suite) + " needs " + needs[static_cast<int>(suite)]);
  }
  const std::string name = suite_name(suite);
  std::vector<CheckReport> parts;
  switch (suite) {
    case Suite::algebraic:
      parts.push_back(check_algebraic(*s.gcs, opts));
      if (s.metric) {
        parts.push_back(check_metric_axioms(*s.metric, s.chart, opts));
        parts.push_back(check_compatibility(s.hermitian(), opts));
      }
      break;
    case Suite::integrability: parts.push_back(check_integrability(*s.gcs, opts)); break;
    case Suite::conf_integrability:
      parts.push_back(check_lee_closed(*s.lee, s.chart, opts));
      parts.push_back(check_conformal_integrability(*s.gcs, *s.lee, opts));
      break;
    case Suite::gk:
      for (GkCriterion c : kGk) parts.push_back(prefixed(check_gk(s.hermitian(), c, opts), criterion_name(c)));
      break;
    case Suite::conf_gk:
      parts.push_back(check_lee_closed(*s.lee, s.chart, opts));
      for (ConfGkCriterion c : kConfGk)
        parts.push_back(prefixed(check_conf_gk(s.hermitian(), *s.lee, c, opts), criterion_name(c)));
      break;
    case Suite::hypersurface:
      if (s.lee) parts.push_back(check_lee1(*s.hyp, s.hermitian(), *s.lee, opts));
      if (classical_ambient(s)) {
        parts.push_back(check_crf(*s.hyp, s.metric->gamma, s.gcs->a, opts));
        parts.push_back(check_closed_fundamental(*s.hyp, s.metric->gamma, s.gcs->a, opts));
      }
      break;
    case Suite::all: break;
  }
  return merge_reports(name, parts);
}

std::vector<CheckReport> run_suites(const Structure& s, Suite suite, const CheckOptions& opts) {
  if (suite != Suite::all) return {run_suite(s, suite, opts)};
  std::vector<CheckReport> out;
  for (Suite one : single_suites())
    if (applicable(s, one)) out.push_back(run_suite(s, one, opts));
  return out;
}

}  // namespace ggv
