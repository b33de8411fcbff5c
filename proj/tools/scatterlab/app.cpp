#include "scatterlab/app.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "scatter/error.hpp"
#include "scatterlab/commands.hpp"
#include "scatterlab/config.hpp"
#include "scatterlab/output.hpp"
#include "scatterlab/presets.hpp"

namespace scatterlab {

namespace {

struct Flags {
  std::string config_path;
  std::string preset;
  std::string out_dir = "scatterlab_out";
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  unsigned threads = 0;
  bool analytic_only = false;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

json load_user_document(const std::string& path, Command command, std::string& preset_from_manifest) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError(path, "cannot open config file");
  std::ostringstream ss;
  ss << is.rdbuf();
  json doc = parse_document(ss.str(), path);
  // A manifest replays the configuration it recorded.
  if (doc.contains("scatterlab_manifest")) {
    const auto recorded = doc.value("command", std::string());
    if (recorded != to_string(command)) {
      throw ConfigError(path + ":/command", "manifest was written by the " + recorded + " command");
    }
    if (!doc.contains("config") || !doc["config"].is_object()) throw ConfigError(path + ":/config", "missing");
    if (doc.contains("preset") && doc["preset"].is_string()) preset_from_manifest = doc["preset"].get<std::string>();
    doc = doc["config"];
  }
  check_keys(doc, path);
  return doc;
}

int execute(Command command, const Flags& flags, const std::vector<std::string>& argv, std::ostream& out,
            std::ostream& err) {
  json doc = default_document();
  std::string preset_name = flags.preset;
  if (!flags.preset.empty()) {
    const Preset& p = find_preset(flags.preset);
    if (p.command != command) {
      throw ConfigError("--preset", "preset " + std::string(p.name) + " belongs to the " +
                                        std::string(to_string(p.command)) + " command");
    }
    doc = merge(doc, p.patch);
  }
  if (!flags.config_path.empty()) {
    std::string recorded_preset;
    doc = merge(doc, load_user_document(flags.config_path, command, recorded_preset));
    if (preset_name.empty()) preset_name = recorded_preset;
  }
  if (flags.seed_opt->count() > 0) doc["seed"] = flags.seed;
  if (flags.trials_opt->count() > 0) doc["trials"] = flags.trials;
  if (flags.threads_opt->count() > 0) doc["threads"] = flags.threads;
  if (flags.analytic_only) doc["analytic_only"] = true;

  const RunConfig config = resolve(command, doc);
  const auto start = std::chrono::steady_clock::now();
  const CommandResult result = run_command(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::filesystem::path dir(flags.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  json manifest;
  manifest["scatterlab_manifest"] = 1;
  manifest["command"] = std::string(to_string(command));
  manifest["preset"] = preset_name.empty() ? json(nullptr) : json(preset_name);
  manifest["argv"] = argv;
  manifest["version"] = SCATTERLAB_VERSION;
  manifest["seed"] = config.spec.seed;
  manifest["config"] = config.document;
  manifest["outputs"] = json::array();
  for (const OutputFile& f : result.files) {
    write_atomic(dir / f.name, f.content);
    manifest["outputs"].push_back({{"file", f.name}, {"sha256", sha256_hex(f.content)}, {"bytes", f.content.size()}});
    out << (dir / f.name).string() << '\n';
  }
  manifest["summary"] = result.summary;
  manifest["warnings"] = result.warnings;
  manifest["wall_time_s"] = wall;
  const std::filesystem::path manifest_path = dir / (std::string(to_string(command)) + ".manifest.json");
  write_atomic(manifest_path, manifest.dump(2) + "\n");
  out << manifest_path.string() << '\n';
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  return kOk;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"scatterlab: monostatic vs multistatic backscatter experiments"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<Command, const char*> commands[] = {
      {Command::ber, "BER versus SNR or transmit power, Monte Carlo beside closed forms"},
      {Command::outage, "average information outage versus SINR threshold"},
      {Command::energy, "average and maximum energy outage versus harvesting threshold"},
      {Command::diversity, "high-SNR log-log slope of the closed-form BER"},
      {Command::place, "rank carrier-emitter layouts by a network metric"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(command)), help);
    sub->add_option("config", flags.config_path, "JSON config or a manifest to replay")->check(CLI::ExistingFile);
    sub->add_option("--preset", flags.preset, "start from a named preset (see `scatterlab presets`)");
    flags.seed_opt = sub->add_option("--seed", flags.seed, "master seed");
    flags.trials_opt = sub->add_option("--trials", flags.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    flags.threads_opt = sub->add_option("--threads", flags.threads, "worker threads (results do not depend on it)")
                            ->check(CLI::Range(1u, 1024u));
    sub->add_flag("--analytic-only", flags.analytic_only, "skip Monte Carlo");
    sub->add_option("--out", flags.out_dir, "output directory")->capture_default_str();
    subs.emplace_back(command, sub);
  }
  CLI::App* list = app.add_subcommand("presets", "list the built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  if (list->parsed()) {
    for (const Preset& p : presets()) out << p.name << "\t" << to_string(p.command) << "\t" << p.summary << '\n';
    return kOk;
  }
  std::vector<std::string> args(argv, argv + argc);
  try {
    for (const auto& [command, sub] : subs) {
      if (!sub->parsed()) continue;
      // The option pointers above belong to the last subcommand; rebind to the parsed one.
      flags.seed_opt = sub->get_option("--seed");
      flags.trials_opt = sub->get_option("--trials");
      flags.threads_opt = sub->get_option("--threads");
      return execute(command, flags, args, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const scatter::DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const scatter::NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kConfigError;
}

}  // namespace scatterlab
