#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "ggv/error.hpp"
#include "ggv/harness/fixtures.hpp"
#include "ggv/harness/report_io.hpp"
#include "ggv/harness/structure_file.hpp"
#include "ggv/harness/suite.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kNumeric = 3 };

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used, 0);
  if (used != s.size()) throw ggv::UsageError("invalid seed '" + s + "'");
  return v;
}

std::string sections(const ggv::Structure& s) {
  std::string out;
  const auto add = [&](bool present, const char* name) {
    if (!present) return;
    if (!out.empty()) out += ", ";
    out += name;
  };
  add(s.gcs.has_value(), "A/pi/sigma");
  add(s.metric.has_value(), "gamma/psi");
  add(s.lee.has_value(), "lee");
  add(s.hyp.has_value(), "hyp");
  return out.empty() ? "none" : out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of generalized complex and Hermitian structures on coordinate charts"};
  app.require_subcommand(1);

  std::string fixture, file, suite = "all", report = "text", seed = "0x5EEDC0DE", output;
  int points = ggv::kDefaultPoints, workers = 1;
  double tol = ggv::kDefaultTol;

  auto* check = app.add_subcommand("check", "Run a check suite on a fixture or a structure file");
  auto* fx = check->add_option("--fixture", fixture, "Built-in fixture name");
  auto* fl = check->add_option("--file", file, "Structure file path");
  fx->excludes(fl);
  check->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember(
          {"algebraic", "integrability", "conf-integrability", "gk", "conf-gk", "hypersurface", "all"}));
  check->add_option("--points", points, "Sample points")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Sampling seed (decimal or 0x hex)");
  check->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);
  check->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "jsonl"}));
  check->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  app.add_subcommand("fixtures", "List the built-in fixtures with their expected verdicts");

  auto* parse_check = app.add_subcommand("parse-check", "Parse a structure file and summarize it");
  parse_check->add_option("path", file, "Structure file")->required();

  auto* exp = app.add_subcommand("export", "Write a fixture as a structure file");
  exp->add_option("--fixture", fixture, "Built-in fixture name")->required();
  exp->add_option("--output", output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (app.got_subcommand("fixtures")) {
      for (const std::string& name : ggv::fixture_names()) {
        const ggv::Fixture f = ggv::make_fixture(name);
        std::cout << name << "  " << f.description << "\n   ";
        for (const auto& [s, pass] : f.expected) std::cout << " " << s << "=" << (pass ? "pass" : "fail");
        std::cout << "\n";
      }
      return kPass;
    }
    if (app.got_subcommand("parse-check")) {
      const ggv::Structure s = ggv::load_structure_file(file);
      std::cout << "ok: dim " << s.dim() << ", sections " << sections(s) << "\n";
      return kPass;
    }
    if (app.got_subcommand("export")) {
      const std::string text = ggv::write_structure(ggv::make_fixture(fixture).structure);
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output, std::ios::binary);
        if (!(out << text)) throw ggv::UsageError("cannot write '" + output + "'");
      }
      return kPass;
    }

    if (fixture.empty() == file.empty()) throw ggv::UsageError("check needs exactly one of --fixture and --file");
    const ggv::Structure s = fixture.empty() ? ggv::load_structure_file(file) : ggv::make_fixture(fixture).structure;
    ggv::CheckOptions opts;
    opts.points = points;
    opts.seed = parse_seed(seed);
    opts.tol = tol;
    opts.workers = workers;
    const auto reports = ggv::run_suites(s, ggv::parse_suite(suite), opts);
    std::cout << (report == "jsonl" ? ggv::to_jsonl(reports) : ggv::to_text(reports));
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass;
    return pass ? kPass : kFail;
  } catch (const ggv::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ggv::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ggv::DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: invalid number\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: number out of range\n";
    return kUsage;
  } catch (const ggv::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}
