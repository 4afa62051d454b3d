// Command-line front end: runs registered claims and prints reports.

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "afrel/verify.hpp"
#include "json.hpp"

namespace {

const char* kSupported =
    "supported types: A_l (l >= 1), B_l and C_l (l >= 2), D_l (l >= 4), E6, E7, E8, F4, G2; "
    "the vacuum module needs rank <= 8 and dimension <= 255";

struct Options {
  std::string type;
  int level = 1;
  int degree = 0;
  std::vector<std::string> claims;
  std::string format = "text";
  std::string cache_dir;
  int parallel = 1;
  std::string sign = "standard";
};

afrel::CartanType parse_type(const std::string& s) {
  afrel::CartanType t;
  try {
    t = afrel::CartanType::parse(s);
  } catch (const std::invalid_argument& e) {
    throw afrel::ConfigError(std::string(e.what()) + "; " + kSupported);
  }
  const int dim = afrel::RootSystem(t).num_positive() * 2 + t.rank;
  if (t.rank > 8 || dim > 255) throw afrel::ConfigError("type " + t.name() + " is too large; " + kSupported);
  return t;
}

std::vector<std::string> expand_claims(const std::vector<std::string>& requested, const afrel::CartanType& t) {
  std::vector<std::string> out;
  for (const std::string& c : requested) {
    if (c != "all") {
      out.push_back(c);
      continue;
    }
    const bool a1 = t.family == afrel::Family::A && t.rank == 1;
    for (const auto& info : afrel::claim_registry()) {
      if (info.applies == afrel::Applicability::NotA1 && a1) continue;
      if (info.applies == afrel::Applicability::A1Only && !a1) continue;
      out.push_back(info.id);
    }
  }
  return out;
}

int run_verify(const Options& o) {
  const afrel::CartanType type = parse_type(o.type);
  if (o.format != "text" && o.format != "json") throw afrel::ConfigError("format must be text or json");
  if (o.sign != "standard" && o.sign != "flipped") throw afrel::ConfigError("sign convention must be standard or flipped");
  if (o.parallel < 1) throw afrel::ConfigError("--parallel must be at least 1");
  const auto sign = o.sign == "standard" ? afrel::SignConvention::Standard : afrel::SignConvention::Flipped;
  const std::vector<std::string> claims = expand_claims(o.claims, type);
  if (claims.empty()) throw afrel::ConfigError("no claim requested; use --claim <id> or --claim all");
  for (const std::string& c : claims) afrel::check_claim_config(afrel::find_claim(c), type, o.level, o.degree);

  std::vector<afrel::VerificationReport> reports(claims.size());
  if (o.parallel == 1 || claims.size() == 1) {
    afrel::Verifier verifier(type, o.level, o.degree, sign, o.cache_dir);
    for (size_t i = 0; i < claims.size(); ++i) {
      reports[i] = verifier.run(claims[i]);
      if (o.format == "text") std::cout << reports[i].to_text() << std::flush;
    }
  } else {
    // independent engines, one claim at a time per worker
    std::mutex mu;
    size_t next = 0;
    std::string error;
    auto worker = [&] {
      for (;;) {
        size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= claims.size() || !error.empty()) return;
          i = next++;
        }
        try {
          afrel::VerificationReport r = afrel::verify(claims[i], type, o.level, o.degree, sign, o.cache_dir);
          std::lock_guard<std::mutex> lock(mu);
          reports[i] = std::move(r);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(mu);
          error = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(o.parallel, static_cast<int>(claims.size())); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (!error.empty()) throw std::runtime_error(error);
    if (o.format == "text") {
      for (const auto& r : reports) std::cout << r.to_text();
    }
  }

  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (o.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::json::parse(r.to_json()));
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << (ok ? "all claims passed" : "some claims FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of relations among annihilating fields of affine vacuum modules"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  Options o;
  auto* verify = app.add_subcommand("verify", "run claims and print reports");
  verify->add_option("--type", o.type, "Cartan type, e.g. A1, A2, G2")->required();
  verify->add_option("--level", o.level, "level k >= 1")->capture_default_str();
  verify->add_option("--degree", o.degree, "largest degree examined")->required();
  verify->add_option("--claim", o.claims, "claim id (repeatable), or 'all'")->delimiter(',');
  verify->add_option("--format", o.format, "text or json")->capture_default_str();
  verify->add_option("--cache-dir", o.cache_dir, "advisory slice cache directory")->envname("AFREL_CACHE_DIR");
  verify->add_option("--parallel", o.parallel, "number of claims run at once")->capture_default_str();
  verify->add_option("--sign-convention", o.sign, "standard or flipped")->capture_default_str();
  verify->configurable(true);

  std::string list_format = "text";
  auto* list = app.add_subcommand("list-claims", "print the claim registry");
  list->add_option("--format", list_format, "text or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*list) {
      if (list_format == "json") {
        std::cout << afrel::claims_json() << "\n";
      } else {
        for (const auto& c : afrel::claim_registry()) std::cout << c.id << "\t" << c.anchor << "\n";
      }
      return 0;
    }
    return run_verify(o);
  } catch (const afrel::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
