// dyadiclab: verification suites, constant probes, file transforms and the
// covering experiment.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyadic/error.hpp"
#include "dyadiclab/commands.hpp"
#include "dyadiclab/config.hpp"
#include "dyadiclab/io.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::vector<std::string> suites;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config, "key=value configuration file");
  app->add_option("--seed", o.seed, "overrides the configured seed");
  app->add_option("--out", o.out, "output directory")->capture_default_str();
  app->add_option("--suite", o.suites, "restrict to a suite (repeatable)");
}

dyadiclab::Config resolve(const CommonOptions& o) {
  dyadiclab::Config c = o.config.empty() ? dyadiclab::Config{} : dyadiclab::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (!o.suites.empty()) c.suites = o.suites;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadiclab: experiments on the dyadic triangular Hilbert form"};
  app.require_subcommand(1);

  CommonOptions verify_opts, constants_opts, cover_opts;
  CLI::App* verify = app.add_subcommand("verify", "run the exact-identity suites");
  add_common(verify, verify_opts);
  CLI::App* constants = app.add_subcommand("constants", "probe the constants of the up-to-constant inequalities");
  add_common(constants, constants_opts);
  CLI::App* cover = app.add_subcommand("cover", "greedy covering of random parallelogram ensembles");
  add_common(cover, cover_opts);

  dyadiclab::TransformRequest req;
  CLI::App* transform = app.add_subcommand("transform", "apply an operator to CSV inputs");
  transform->add_option("--op", req.op, "haar | maxmod | lambda | lk")->required();
  transform->add_option("--input", req.inputs, "input CSV (repeatable, in operator order)")->required();
  transform->add_option("--output", req.output, "output CSV")->required();
  transform->add_option("--eps", req.eps, "constant coefficient in [-1, 1]")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return dyadiclab::cmd_verify(resolve(verify_opts), verify_opts.out);
    if (*constants) return dyadiclab::cmd_constants(resolve(constants_opts), constants_opts.out);
    if (*cover) return dyadiclab::cmd_cover(resolve(cover_opts), cover_opts.out);
    if (*transform) return dyadiclab::cmd_transform(req);
  } catch (const dyadiclab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dyadiclab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const dyadic::DyadicError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
