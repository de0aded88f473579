#include <iostream>

#include "CLI11.hpp"
#include "jetdiff/dispatch.hpp"

namespace {

struct OptionSpec {
  const char* name;
  const char* help;
};

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<OptionSpec> options;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {"chern", "Chern classes and numbers of a hypersurface",
       {{"ambient", "ambient projective dimension (3 or 4)"}, {"degree", "hypersurface degree"}}},
      {"filtration", "Schur filtration indices of a graded jet bundle",
       {{"family", "k2dim2, k3dim2, k3dim3 or gg"}, {"m", "weight"}, {"k", "jet order (gg)"}, {"rank", "bundle rank (gg)"}}},
      {"chi", "Euler characteristic of E_{k,m}",
       {{"k", "jet order"}, {"dim", "dimension of X"}, {"m", "weight"}, {"degree", "hypersurface degree"}}},
      {"chi-leading", "leading coefficient in m of chi(E_{k,m})",
       {{"k", "jet order"}, {"dim", "dimension of X"}, {"degree", "hypersurface degree"}}},
      {"h2-bound", "upper bound for h^2 of E_{3,m} on a threefold", {{"m", "weight"}, {"degree", "hypersurface degree"}}},
      {"threshold", "minimal degree for a positivity criterion",
       {{"criterion", "jets1-surface, jets2-surface, chi3-positive, h0-minus-h2, twisted-surface, twisted-threefold"},
        {"params", "assignments such as delta=1/5"}}},
      {"feasibility", "evaluate the inequalities of a parameter region",
       {{"region", "twisted-surface, twisted-threefold or deg-condition"}, {"params", "assignments such as d=20,delta=1/2"}}},
      {"tangency", "check tangency of the explicit vector field families",
       {{"degree", "hypersurface degree"}, {"order", "jet order (0..2)"}, {"family", "V300, V210, V111, V1 or all"}}},
      {"span", "rank of the vector field collection at a random point",
       {{"degree", "hypersurface degree"}, {"order", "jet order (0..2)"}, {"seed", "random point seed"}}},
      {"verify", "run a symbolic verification suite", {{"suite", "relationR, invariance, unipotent or group-law"}}},
  };
  return specs;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace jetdiff;
  CLI::App app{"Exact computations for jet differentials on projective hypersurfaces", "jetdiff"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string cache_path;
  bool no_cache = false;
  bool json_flag = false;
  app.add_option("--workers", config.workers, "worker threads for reductions")->check(CLI::PositiveNumber);
  app.add_option("--cache", cache_path, "closed-form cache file (default: $JETDIFF_CACHE)");
  app.add_flag("--no-cache", no_cache, "do not read or write the cache");
  app.add_option("--periods", config.periods, "interpolation periods to try")->delimiter(',');
  app.add_option("--starts", config.starts, "interpolation start points to try")->delimiter(',');
  app.add_flag("--json", json_flag, "accepted for compatibility; output is always JSON");

  if (argc > 1 && argv[1][0] != '-') {
    const auto names = command_names();
    if (std::find(names.begin(), names.end(), argv[1]) == names.end()) {
      std::cout << error_record(argv[1], ErrorKind::UnknownCommand, std::string("unknown command '") + argv[1] + "'")
                       .dump(2)
                << "\n";
      return exit_code_for(ErrorKind::UnknownCommand);
    }
  }

  std::map<std::string, std::string> raw;
  for (const auto& spec : commands()) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    for (const auto& opt : spec.options) sub->add_option(std::string("--") + opt.name, raw[opt.name], opt.help);
    sub->callback([&config, name = spec.name] { config.command = name; });
  }
  auto* cache = app.add_subcommand("cache", "inspect or clear the closed-form cache");
  cache->add_option("action", raw["action"], "inspect or clear")->required();
  cache->callback([&config] { config.command = "cache"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_record(config.command, ErrorKind::InvalidArgument, e.what()).dump(2) << "\n";
    return exit_code_for(ErrorKind::InvalidArgument);
  }

  for (const auto& [name, value] : raw)
    if (!value.empty()) config.params[name] = value;
  if (!cache_path.empty()) config.cache_path = cache_path;
  config.use_cache = !no_cache;

  try {
    const ResultRecord rec = dispatch(config);
    std::cout << rec.to_json().dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    std::cout << error_record(config.command, e.kind(), e.what()).dump(2) << "\n";
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cout << error_record(config.command, ErrorKind::IoFailure, e.what()).dump(2) << "\n";
    return exit_code_for(ErrorKind::IoFailure);
  } catch (const std::exception& e) {
    std::cout << error_record(config.command, ErrorKind::InternalInconsistency, e.what()).dump(2) << "\n";
    return exit_code_for(ErrorKind::InternalInconsistency);
  }
}
