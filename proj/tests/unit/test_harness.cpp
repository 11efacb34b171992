#include "doctest.h"
#include "support.hpp"

#include <map>
#include <set>

#include "ggv/error.hpp"
#include "ggv/harness/fixtures.hpp"
#include "ggv/harness/report_io.hpp"
#include "ggv/harness/sampling.hpp"
#include "ggv/harness/structure_file.hpp"
#include "ggv/harness/suite.hpp"
#include "json.hpp"

using namespace ggv;
using namespace ggv::test;

namespace {

CheckOptions quick(int points = 16) {
  CheckOptions o;
  o.points = points;
  return o;
}

/// Verdict per criterion prefix ("gualtieri/...") of a gk or conf-gk report.
std::map<std::string, bool> criterion_verdicts(const CheckReport& r) {
  std::map<std::string, bool> v;
  for (const ConditionResult& c : r.conditions) {
    const auto slash = c.id.find('/');
    if (slash == std::string::npos) continue;
    const std::string crit = c.id.substr(0, slash);
    const auto it = v.find(crit);
    v[crit] = (it == v.end() ? true : it->second) && c.pass;
  }
  return v;
}

template <class M>
double matrix_gap(const M& a, const M& b, const Point& p) {
  return max_diff(a.values(p), b.values(p));
}

template <class V>
double vector_gap(const V& a, const V& b, const Point& p) {
  const auto xs = lift_point(p);
  return max_diff(values(a.eval(xs)), values(b.eval(xs)));
}

/// Largest component difference between two structures at `points` of the first chart.
double structure_gap(const Structure& a, const Structure& b, int points) {
  REQUIRE(a.dim() == b.dim());
  REQUIRE(a.gcs.has_value() == b.gcs.has_value());
  REQUIRE(a.metric.has_value() == b.metric.has_value());
  REQUIRE(a.lee.has_value() == b.lee.has_value());
  REQUIRE(a.hyp.has_value() == b.hyp.has_value());
  CHECK(a.chart.box == b.chart.box);
  double gap = 0.0;
  for (const Point& p : sample_points(a.chart, points, 7)) {
    CHECK(b.chart.admits(p));
    if (a.chart.exclusion)
      gap = std::max(gap, std::abs(a.chart.exclusion->eval_value(p) - b.chart.exclusion->eval_value(p)));
    if (a.gcs)
      gap = std::max({gap, matrix_gap(a.gcs->a, b.gcs->a, p), matrix_gap(a.gcs->pi, b.gcs->pi, p),
                      matrix_gap(a.gcs->sigma, b.gcs->sigma, p)});
    if (a.metric)
      gap = std::max({gap, matrix_gap(a.metric->gamma, b.metric->gamma, p),
                      matrix_gap(a.metric->psi, b.metric->psi, p)});
    if (a.lee) gap = std::max(gap, vector_gap(*a.lee, *b.lee, p));
  }
  if (a.hyp) {
    CHECK(a.hyp->param_chart().box == b.hyp->param_chart().box);
    for (const Point& u : sample_points(a.hyp->param_chart(), points, 7)) {
      const auto us = lift_point(u);
      gap = std::max(gap, max_diff(values(a.hyp->point_jets(us)), values(b.hyp->point_jets(us))));
    }
  }
  return gap;
}

}  // namespace

TEST_CASE("sampling is deterministic and respects exclusions") {
  const Chart unit(2, 0.0, 1.0);
  const auto a = sample_points(unit, 3, 1);
  const auto b = sample_points(unit, 3, 1);
  CHECK(a.size() == 3);
  CHECK(a == b);
  CHECK(sample_points(unit, 3, 2) != a);
  for (const Point& p : a) CHECK(unit.in_box(p));

  Chart ann(4, -2.0, 2.0);
  ann.exclusion = parse("norm2 - 0.25", 4);
  for (const Point& p : sample_points(ann, 200, 3)) {
    double n2 = 0.0;
    for (double v : p) n2 += v * v;
    CHECK(n2 >= 0.25);
  }

  Chart none(2, -1.0, 1.0);
  none.exclusion = c(-1.0);
  CHECK_THROWS_AS(sample_points(none, 4, 1), SamplingExhausted);
  Chart singular(2, -1.0, 1.0);
  singular.exclusion = parse("ln(x1 - 2)", 2);
  CHECK_THROWS_AS(sample_points(singular, 4, 1), SamplingExhausted);
}

TEST_CASE("structure file parsing") {
  const Structure minimal = parse_structure("chart dim = 2\nA 1 1 = 0\npi 1 2 = 0\nsigma 1 2 = 0\n");
  REQUIRE(minimal.gcs.has_value());
  CHECK(minimal.chart.box == std::vector<std::pair<double, double>>{{-1.0, 1.0}, {-1.0, 1.0}});
  CHECK_FALSE(run_suite(minimal, Suite::algebraic).pass);

  const Structure full = parse_structure(
      "# comment line\n"
      "chart dim = 4\n"
      "chart box x1 = -2 2   # trailing comment\n"
      "chart exclude = norm2 - 0.25\n"
      "A 1 2 = x1^2\n"
      "pi 1 2 = 1\n"
      "sigma 1 2 = 1/norm2\n"
      "gamma 1 1 = 1/norm2\n"
      "psi 1 2 = 1/norm2\n"
      "lee 1 = -2*x1/norm2\n"
      "hyp 1 = cos(x1)*cos(x2)\n"
      "hyp box x1 = 0.2 1.3\n");
  CHECK(full.chart.box[0] == std::pair<double, double>{-2.0, 2.0});
  CHECK(full.chart.box[1] == std::pair<double, double>{-1.0, 1.0});
  const Point p{1.0, 0.5, 0.0, 0.0};
  CHECK(full.gcs->a.values(p)(0, 1) == 1.0);
  CHECK(full.gcs->pi.values(p)(1, 0) == -1.0);
  CHECK(full.metric->gamma.values(p)(0, 0) == doctest::Approx(0.8));
  CHECK((*full.lee)[0].eval_value(p) == doctest::Approx(-1.6));
  CHECK(full.hyp->dim() == 3);
  CHECK(full.hyp->param_chart().box[0] == std::pair<double, double>{0.2, 1.3});
}

TEST_CASE("structure file errors") {
  const auto error_at = [](const char* text, std::size_t line, std::size_t column) {
    try {
      parse_structure(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.offset() == column);
    }
  };
  error_at("chart dim = 2\nA 1 1 = x1 +* 2\n", 2, 12);
  error_at("chart dim = 2\nA 1 1 = x3\n", 2, 8);
  error_at("A 1 1 = 1\n", 1, 0);
  error_at("chart dim = 2\npi 2 1 = 1\n", 2, 5);
  error_at("chart dim = 2\nA 1 1 = 1\nA 1 1 = 2\n", 3, 0);
  error_at("chart dim = 2\nbogus 1 = 2\n", 2, 0);
  error_at("chart dim = 2\nchart box x1 = 2 1\n", 2, 15);
  error_at("chart dim = 2\nA 1 1 2\n", 2, 7);
  error_at("", 1, 0);
  CHECK_THROWS_AS(parse_structure("chart dim = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_structure("chart dim = 2\nA 3 1 = 1\n"), DimensionMismatch);
  CHECK_THROWS_AS(parse_structure("chart dim = 2\nchart box x3 = 0 1\n"), DimensionMismatch);
  CHECK_THROWS_AS(load_structure_file("/nonexistent/file.ggv"), UsageError);
}

TEST_CASE("shipped structure files equal the built-in fixtures") {
  for (const std::string& name : fixture_names()) {
    const Structure built = make_fixture(name).structure;
    const Structure loaded = load_structure_file(std::string(GGV_FIXTURE_DIR) + "/" + name + ".ggv");
    CHECK_MESSAGE(structure_gap(built, loaded, 10) <= 1e-12, name);
    const Structure again = parse_structure(write_structure(loaded));
    CHECK_MESSAGE(structure_gap(loaded, again, 10) == 0.0, name);
  }
}

TEST_CASE("fixtures reproduce their expected verdicts") {
  const auto names = fixture_names();
  CHECK(names.size() >= 12);
  for (const std::string& name : names) {
    const Fixture f = make_fixture(name);
    for (Suite s : single_suites()) {
      const std::string sn = suite_name(s);
      const auto it = f.expected.find(sn);
      CHECK_MESSAGE(applicable(f.structure, s) == (it != f.expected.end()), name << " " << sn);
      if (it == f.expected.end()) {
        CHECK_THROWS_AS(run_suite(f.structure, s, quick()), UsageError);
        continue;
      }
      const CheckReport r = run_suite(f.structure, s, CheckOptions{});
      CHECK_MESSAGE(r.pass == it->second, name << " " << sn << " max residual " << r.max_residual());
      CHECK(r.suite == sn);
      CHECK(r.points_requested == kDefaultPoints);
    }
  }
  CHECK_THROWS_AS(make_fixture("no_such_fixture"), UsageError);
  CHECK_THROWS_AS(parse_suite("bogus"), UsageError);
  CHECK_THROWS_AS(run_suite(make_fixture("ex31").structure, Suite::all), UsageError);
  CHECK(parse_suite("conf-gk") == Suite::conf_gk);
}

TEST_CASE("suite examples") {
  const Structure prime = make_fixture("ex31_prime").structure;
  const CheckReport r = run_suite(prime, Suite::conf_integrability);
  CHECK(r.pass);
  CHECK(r.max_residual() <= 1e-8);
  const CheckReport gk = run_suite(make_fixture("ex32_rescaled").structure, Suite::gk);
  CHECK_FALSE(gk.pass);
  CHECK(gk.max_residual() > 1e-3);
  CHECK_THROWS_AS(run_suite(prime, Suite::hypersurface), UsageError);
  CHECK(run_suites(prime, Suite::all).size() == 3);
}

TEST_CASE("the generalized Kaehler criteria agree on every fixture") {
  for (const std::string& name : fixture_names()) {
    const Structure s = make_fixture(name).structure;
    for (Suite suite : {Suite::gk, Suite::conf_gk}) {
      if (!applicable(s, suite)) continue;
      const auto v = criterion_verdicts(run_suite(s, suite));
      CHECK(v.size() == 3);
      std::set<bool> distinct;
      for (const auto& [crit, pass] : v) distinct.insert(pass);
      CHECK_MESSAGE(distinct.size() == 1, name << " " << suite_name(suite));
    }
  }
}

TEST_CASE("reports do not depend on the worker count") {
  const Structure s = make_fixture("ex32_rescaled").structure;
  CheckOptions one;
  CheckOptions many;
  many.workers = 5;
  for (Suite suite : {Suite::conf_gk, Suite::gk, Suite::hypersurface, Suite::algebraic}) {
    const std::string a = to_jsonl(run_suites(s, suite, one));
    const std::string b = to_jsonl(run_suites(s, suite, many));
    CHECK(a == b);
    CHECK(a == to_jsonl(run_suites(s, suite, one)));
  }
}

TEST_CASE("JSON-lines reports") {
  const Structure s = make_fixture("ex31_prime").structure;
  const auto reports = run_suites(s, Suite::conf_integrability, quick(8));
  const std::string text = to_jsonl(reports);
  std::size_t lines = 0, start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const auto j = nlohmann::json::parse(text.substr(start, end - start));
    for (const char* key : {"suite", "condition", "max_residual", "worst_point", "points", "seed", "tol", "verdict"})
      CHECK(j.contains(key));
    CHECK(j["suite"] == "conf-integrability");
    CHECK(j["points"]["requested"] == 8);
    CHECK(j["seed"] == kDefaultSeed);
    CHECK(j["tol"] == kDefaultTol);
    CHECK((j["verdict"] == "pass" || j["verdict"] == "fail"));
    CHECK(j["worst_point"].size() == 4);
    ++lines;
    start = end + 1;
  }
  std::size_t conditions = 0;
  for (const auto& r : reports) conditions += r.conditions.size();
  CHECK(lines == conditions);

  const std::string t = to_text(reports);
  CHECK(t.find("suite conf-integrability: PASS") != std::string::npos);
}

TEST_CASE("verdicts need enough evaluated points") {
  // ln(x1 + 0.5) is undefined on a quarter of the box.
  Chart ch(2, -1.0, 1.0);
  LeeForm w(2);
  w[0] = parse("ln(x1 + 0.5)", 2);
  const CheckReport r = check_lee_closed(w, ch, quick(64));
  CHECK(r.points_evaluated < r.points_requested);
  CHECK_FALSE(r.pass);
}
