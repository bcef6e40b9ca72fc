#include "app.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sshchain/io.hpp"
#include "sshchain/sshchain.hpp"

namespace sshchain::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands{{
    {Command::Spectrum, "spectrum"},
    {Command::Eigenstates, "eigenstates"},
    {Command::Disorder, "disorder"},
    {Command::Evolve, "evolve"},
    {Command::Memory, "memory"},
    {Command::Pst, "pst"},
    {Command::Classify, "classify"},
}};

double single_disorder(const RunConfig& cfg) {
  if (cfg.disorder.size() != 1)
    throw ConfigError(std::string(command_name(cfg.command)) + " takes a single --disorder value");
  return cfg.disorder.front();
}

// Onsite energies for single-shot commands: realization 0 of the stream the
// disorder sweep would use at this scale.
std::optional<std::vector<double>> single_realization(const ChainSpec& spec, const RunConfig& cfg) {
  const double e = single_disorder(cfg);
  if (e == 0.0) return std::nullopt;
  return draw_onsite(spec, DisorderConfig{e, 1, sweep_seed(cfg.seed, e)}, 0);
}

Spectrum spectrum_for(const ChainSpec& spec, const RunConfig& cfg) {
  const auto onsite = single_realization(spec, cfg);
  if (onsite) return eigendecompose(build_hamiltonian(spec, std::span<const double>(*onsite)));
  return eigendecompose(build_hamiltonian(spec));
}

class ArtifactWriter {
 public:
  ArtifactWriter(fs::path dir, std::string format) : dir_(std::move(dir)), format_(std::move(format)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
      throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  void table(const std::string& stem, const Table& t) {
    std::ostringstream os;
    if (format_ == "json")
      os << to_json(t).dump(1) << '\n';
    else
      write_csv(os, t);
    put(stem + "." + format_, os.str());
  }

  void finish(const RunConfig& cfg) {
    ojson m;
    m["tool"] = "sshchain";
    m["command"] = command_name(cfg.command);
    m["config"] = cfg.to_json();
    m["seed"] = cfg.seed;
    auto arts = ojson::array();
    for (const auto& [name, hash] : written_) arts.push_back(ojson{{"file", name}, {"sha256", hash}});
    m["artifacts"] = std::move(arts);
    write_file("manifest.json", m.dump(2) + "\n");
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& w : written_) out.push_back(w.first);
    return out;
  }

 private:
  void put(const std::string& name, const std::string& bytes) {
    write_file(name, bytes);
    written_.emplace_back(name, sha256_hex(bytes));
  }

  void write_file(const std::string& name, const std::string& bytes) {
    const fs::path p = dir_ / name;
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + p.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("write failed for " + p.string());
  }

  fs::path dir_;
  std::string format_;
  std::vector<std::pair<std::string, std::string>> written_;
};

// ---------------------------------------------------------------------------
// Commands

void cmd_spectrum(const RunConfig& cfg, ArtifactWriter& w) {
  const auto spec = cfg.chain();
  w.table("spectrum", spectrum_table(spectrum_for(spec, cfg), spec));
}

void cmd_eigenstates(const RunConfig& cfg, ArtifactWriter& w) {
  const auto spec = cfg.chain();
  const Spectrum s = spectrum_for(spec, cfg);
  std::vector<std::size_t> pick;
  if (!cfg.states.empty()) {
    for (int n : cfg.states) {
      if (n < 1 || n > static_cast<int>(s.size()))
        throw ConfigError("state index " + std::to_string(n) + " out of range 1.." + std::to_string(s.size()));
      pick.push_back(static_cast<std::size_t>(n - 1));
    }
  } else {
    // Localized states plus the extremal and central band states.
    const auto g = locate_gap_states(s, spec, false);
    pick.insert(pick.end(), g.in_gap.begin(), g.in_gap.end());
    pick.insert(pick.end(), g.outer.begin(), g.outer.end());
    for (const auto* band : {&g.lower, &g.upper})
      if (!band->empty()) {
        pick.push_back(band->front());
        pick.push_back((*band)[band->size() / 2]);
        pick.push_back(band->back());
      }
    std::sort(pick.begin(), pick.end());
    pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
  }
  for (auto n : pick) w.table("eigenstate_" + std::to_string(n + 1), eigenstate_table(s, spec, n));
}

void cmd_disorder(const RunConfig& cfg, ArtifactWriter& w) {
  const auto spec = cfg.chain();
  const auto results = disorder_sweep(spec, cfg.disorder, cfg.realizations, cfg.seed, cfg.threads);
  w.table("disorder", disorder_table(results, spec));
  w.table("avg_spectrum", avg_spectrum_table(results));
}

int inject_site(const RunConfig& cfg, const ChainSpec& spec) {
  if (!cfg.inject || *cfg.inject == "gapstate") return default_memory_site(spec);
  try {
    std::size_t used = 0;
    const int site = std::stoi(*cfg.inject, &used);
    if (used != cfg.inject->size()) throw std::invalid_argument("trailing characters");
    spec.index_of(site);
    return site;
  } catch (const std::logic_error&) {
    throw ConfigError("--inject expects a site label or 'gapstate', got '" + *cfg.inject + "'");
  }
}

void cmd_evolve(const RunConfig& cfg, ArtifactWriter& w) {
  const auto spec = cfg.chain();
  const Spectrum s = spectrum_for(spec, cfg);
  const int site = inject_site(cfg, spec);
  const auto init = (cfg.inject && *cfg.inject == "gapstate")
                        ? InitialState::eigenstate(s, localized_state(s, spec, site))
                        : InitialState::site(spec, site);
  const auto times = uniform_times(cfg.tmax.value_or(1000.0), cfg.samples.value_or(20001));
  w.table("trajectory", trajectory_table(evolve(s, init, times, spec.strong())));
}

void cmd_memory(const RunConfig& cfg, ArtifactWriter& w) {
  const auto spec = cfg.chain();
  MemoryOptions opt;
  opt.encoding = (cfg.inject && *cfg.inject == "gapstate") ? Encoding::Eigenstate : Encoding::Site;
  opt.site = inject_site(cfg, spec);
  opt.horizon = cfg.tmax.value_or(1000.0);
  opt.samples = cfg.samples.value_or(20001);
  opt.threads = cfg.threads;
  const double e = single_disorder(cfg);
  if (e > 0.0) opt.disorder = DisorderConfig{e, cfg.realizations, sweep_seed(cfg.seed, e)};
  const auto rep = memory_report(spec, opt);

  Table summary{{"encoding", "site", "e_scale", "mean_fidelity", "min_fidelity", "max_fidelity",
                 "dominant_frequency", "phase_slope", "max_phase_deviation", "shifts_in_gap"},
                {}};
  summary.add({std::string(rep.encoding == Encoding::Site ? "site" : "eigenstate"),
               static_cast<std::int64_t>(rep.site), e, rep.mean_fidelity, rep.min_fidelity, rep.max_fidelity,
               rep.dominant_frequency, rep.phase_slope, rep.max_phase_deviation,
               static_cast<std::int64_t>(rep.shifts_in_gap ? 1 : 0)});
  w.table("memory", summary);
  w.table("trajectory", trajectory_table(rep.clean));
  if (!rep.avg_fidelity.empty()) {
    Table avg{{"t", "fidelity", "phase"}, {}};
    for (std::size_t j = 0; j < rep.clean.times.size(); ++j)
      avg.add({rep.clean.times[j], rep.avg_fidelity[j], rep.avg_phase[j]});
    w.table("averaged_trajectory", avg);
    Table shifts{{"realization", "energy_shift"}, {}};
    for (std::size_t r = 0; r < rep.energy_shifts.size(); ++r)
      shifts.add({static_cast<std::int64_t>(r), rep.energy_shifts[r]});
    w.table("energy_shift", shifts);
  }
}

void cmd_pst(const RunConfig& cfg, ArtifactWriter& w) {
  const std::vector<double> ratios =
      cfg.ratios.empty() ? std::vector<double>{cfg.strong / cfg.weak} : cfg.ratios;
  const ChainSpec base(cfg.family, cfg.sites, cfg.strong, cfg.strong / ratios.front());
  if (cfg.inject && inject_site(cfg, base) != base.first_site() && inject_site(cfg, base) != base.last_site())
    throw ConfigError("pst injects at an end site");
  PstOptions opt;
  opt.coarse_samples = cfg.samples.value_or(20000);
  const auto rows = pst_scan(base, ratios, cfg.tmax, 1.5, opt, cfg.threads);
  w.table("pst_scan", pst_scan_table(rows));

  // Fidelity traces for the first ratio, covering the revival.
  const auto& first = rows.front();
  if (first.result.transfer_detected) {
    const auto spec = ChainSpec::with_ratio(base.family(), base.n_sites(), base.strong(), first.ratio);
    const Spectrum s = eigendecompose(build_hamiltonian(spec));
    const int site = cfg.inject ? inject_site(cfg, spec) : spec.first_site();
    const auto times = uniform_times(2.5 * first.result.t_mirror, 20001);
    w.table("trajectory", trajectory_table(evolve(s, InitialState::site(spec, site), times, spec.strong())));
  }
}

void cmd_classify(const RunConfig& cfg, ArtifactWriter& w) {
  const auto spec = cfg.chain();
  const int k_points = cfg.samples.value_or(kDefaultKPoints);
  const std::array<UnitCell, 2> cells{UnitCell::a(spec.strong(), spec.weak()),
                                      UnitCell::b(spec.strong(), spec.weak())};
  Table inv{{"config", "intra", "inter", "winding", "zak_phase", "zak_minus_a"}, {}};
  const double zak_a = zak_phase(cells[0], k_points);
  for (const auto& c : cells) {
    const double z = zak_phase(c, k_points);
    inv.add({std::string(c.label == DimerConfig::A ? "A" : "B"), c.intra, c.inter,
             static_cast<std::int64_t>(winding_number(c, k_points)), z, phase_difference(z, zak_a)});
  }
  w.table("classify", inv);

  const auto census = interface_census(spec);
  Table defects{{"kind", "site"}, {}};
  for (const auto& d : census.defects)
    defects.add({std::string(to_string(d.kind)), static_cast<std::int64_t>(d.site)});
  w.table("census", defects);

  const auto gap = locate_gap_states(eigendecompose(build_hamiltonian(spec)), spec, false);
  const auto counts = gap.counts();
  const bool consistent = counts.in_gap == census.zero_states && counts.outer == census.outer_states;
  Table check{{"census_zero", "census_outer", "spectral_in_gap", "spectral_outer", "consistent"}, {}};
  check.add({static_cast<std::int64_t>(census.zero_states), static_cast<std::int64_t>(census.outer_states),
             static_cast<std::int64_t>(counts.in_gap), static_cast<std::int64_t>(counts.outer),
             static_cast<std::int64_t>(consistent ? 1 : 0)});
  w.table("census_check", check);
  w.table("pseudospin_path", pseudospin_path_table(cells, k_points));
}

template <typename T>
std::vector<T> number_or_array(const nlohmann::json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommands)
    if (n == name) return cmd;
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

ojson RunConfig::to_json() const {
  ojson j;
  j["command"] = command_name(command);
  j["family"] = family_code(family);
  j["sites"] = sites;
  j["strong"] = strong;
  if (ratios.empty())
    j["weak"] = weak;
  else
    j["ratio"] = ratios;
  j["disorder"] = disorder;
  j["realizations"] = realizations;
  j["seed"] = seed;
  if (tmax) j["tmax"] = *tmax;
  if (samples) j["samples"] = *samples;
  if (inject) j["inject"] = *inject;
  if (!states.empty()) j["states"] = states;
  j["out"] = out.string();
  j["format"] = format;
  return j;
}

void RunConfig::validate() const {
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (disorder.empty()) throw ConfigError("need at least one disorder value");
  for (double e : disorder)
    if (!(e >= 0.0)) throw ConfigError("disorder scale must be >= 0");
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  if (samples && *samples < 2) throw ConfigError("samples must be >= 2");
  if (tmax && !(*tmax > 0.0)) throw ConfigError("tmax must be positive");
  if (command != Command::Pst) {
    if (ratios.size() > 1) throw ConfigError("multiple --ratio values are only accepted by pst");
    chain();  // validates the chain parameters
  } else {
    for (double r : ratios)
      if (!(r > 1.0)) throw ConfigError("ratio must exceed 1");
    if (ratios.empty()) chain();
  }
}

void apply_json(RunConfig& cfg, const nlohmann::json& input) {
  const nlohmann::json& j = input.contains("config") ? input.at("config") : input;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (j.contains("weak") && j.contains("ratio")) throw ConfigError("config sets both weak and ratio");
    for (const auto& [key, v] : j.items()) {
      if (key == "command") cfg.command = parse_command(v.get<std::string>());
      else if (key == "family") cfg.family = parse_family(v.get<std::string>());
      else if (key == "sites") cfg.sites = v.get<int>();
      else if (key == "strong") cfg.strong = v.get<double>();
      else if (key == "weak") { cfg.weak = v.get<double>(); cfg.ratios.clear(); }
      else if (key == "ratio") cfg.ratios = number_or_array<double>(v);
      else if (key == "disorder") cfg.disorder = number_or_array<double>(v);
      else if (key == "realizations") cfg.realizations = v.get<int>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "tmax") cfg.tmax = v.get<double>();
      else if (key == "samples") cfg.samples = v.get<int>();
      else if (key == "inject") cfg.inject = v.is_string() ? v.get<std::string>() : std::to_string(v.get<int>());
      else if (key == "states") cfg.states = number_or_array<int>(v);
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "threads") cfg.threads = v.get<unsigned>();
      else if (key == "figure") continue;  // handled by the caller
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<RunConfig> figure_preset(int figure, const RunConfig& base) {
  auto make = [&](Command cmd, Family fam, int sites, double ratio, const std::string& sub) {
    RunConfig c;
    c.command = cmd;
    c.family = fam;
    c.sites = sites;
    c.strong = 8.0;
    c.weak = c.strong / ratio;
    c.seed = base.seed;
    c.format = base.format;
    c.threads = base.threads;
    c.out = base.out / sub;
    return c;
  };
  std::vector<RunConfig> runs;
  switch (figure) {
    case 2:
      runs.push_back(make(Command::Eigenstates, Family::WeakCenter, 101, 40, "a"));
      runs.push_back(make(Command::Eigenstates, Family::StrongCenter, 101, 40, "b"));
      runs.push_back(make(Command::Eigenstates, Family::WeakCenter, 101, 4, "a_ratio4"));
      break;
    case 3:
      runs.push_back(make(Command::Spectrum, Family::WeakCenter, 101, 40, "a"));
      runs.push_back(make(Command::Spectrum, Family::StrongCenter, 101, 40, "b"));
      break;
    case 4:
    case 5:
      for (auto [fam, sub] : {std::pair{Family::WeakCenter, "a"}, std::pair{Family::StrongCenter, "b"}}) {
        auto c = make(Command::Disorder, fam, 101, 40, sub);
        c.disorder = {0.0, 0.1, 1.0, 1.5};
        c.realizations = 100;
        runs.push_back(c);
      }
      break;
    case 6:
      for (double ratio : {40.0, 20.0, 10.0}) {
        auto c = make(Command::Memory, Family::WeakCenter, 21, ratio,
                      "site_ratio" + std::to_string(static_cast<int>(ratio)));
        c.disorder = {0.1};
        c.tmax = 1000.0;
        runs.push_back(c);
      }
      {
        auto c = make(Command::Memory, Family::WeakCenter, 21, 40, "eigenstate_ratio40");
        c.inject = "gapstate";
        c.disorder = {0.1};
        c.tmax = 1000.0;
        runs.push_back(c);
      }
      {
        // Single-realization spectrum for the localized-level shift.
        auto c = make(Command::Spectrum, Family::WeakCenter, 21, 40, "spectrum_e0.1");
        c.disorder = {0.1};
        runs.push_back(c);
        auto clean = make(Command::Spectrum, Family::WeakCenter, 21, 40, "spectrum_clean");
        runs.push_back(clean);
      }
      break;
    case 7: {
      auto c = make(Command::Pst, Family::StrongCenter, 21, 5, "b");
      c.ratios = {3, 4, 5, 6, 7, 8, 9, 10};
      runs.push_back(c);
      break;
    }
    default:
      throw ConfigError("figure must be one of 2..7");
  }
  return runs;
}

std::vector<std::string> run(const RunConfig& cfg) {
  cfg.validate();
  ArtifactWriter w(cfg.out, cfg.format);
  switch (cfg.command) {
    case Command::Spectrum: cmd_spectrum(cfg, w); break;
    case Command::Eigenstates: cmd_eigenstates(cfg, w); break;
    case Command::Disorder: cmd_disorder(cfg, w); break;
    case Command::Evolve: cmd_evolve(cfg, w); break;
    case Command::Memory: cmd_memory(cfg, w); break;
    case Command::Pst: cmd_pst(cfg, w); break;
    case Command::Classify: cmd_classify(cfg, w); break;
  }
  w.finish(cfg);
  return w.names();
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void report(std::ostream& err, std::string_view kind, const std::string& message) {
  err << ojson{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimerized spin-chain simulations: spectra, disorder ensembles, dynamics, topology",
               "sshchain"};
  app.require_subcommand(0, 1);

  std::string family, config_path, out_dir, format, inject;
  int sites = 0, realizations = 0, samples = 0, figure = 0;
  double strong = 0, weak = 0, tmax = 0;
  std::vector<double> ratio, disorder;
  std::vector<int> states;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  auto* o_family = app.add_option("--family", family, "Chain family: a (weak centre) or b (strong centre)")
                       ->check(CLI::IsMember({"a", "b"}));
  auto* o_sites = app.add_option("--sites", sites, "Number of sites N (odd, >= 5)");
  auto* o_strong = app.add_option("--strong", strong, "Strong coupling (default 8)");
  auto* o_weak = app.add_option("--weak", weak, "Weak coupling (default 0.2)");
  auto* o_ratio = app.add_option("--ratio", ratio, "Strong/weak ratio; sets weak = strong/ratio. "
                                                   "pst accepts a comma-separated list")
                      ->delimiter(',');
  auto* o_disorder = app.add_option("--disorder", disorder, "Disorder scale(s) E; disorder accepts a list")
                         ->delimiter(',');
  auto* o_real = app.add_option("--realizations", realizations, "Disorder realizations (default 100)");
  auto* o_seed = app.add_option("--seed", seed, "RNG seed (default 1)");
  auto* o_tmax = app.add_option("--tmax", tmax, "Time horizon in 1/strong units");
  auto* o_samples = app.add_option("--samples", samples, "Time samples (k-points for classify)");
  auto* o_inject = app.add_option("--inject", inject, "Injection: site label or 'gapstate'");
  auto* o_states = app.add_option("--states", states, "eigenstates: 1-based state indices")->delimiter(',');
  auto* o_out = app.add_option("--out", out_dir, "Output directory (default out)");
  auto* o_format = app.add_option("--format", format, "Artifact format: csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
  auto* o_figure = app.add_option("--figure", figure, "Preset reproducing one figure (2-7)")
                       ->check(CLI::Range(2, 7));
  app.add_option("--config", config_path, "JSON config file or manifest; flags override it");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::vector<CLI::App*> subs;
  for (const auto& [cmd, name] : kCommands) {
    auto* s = app.add_subcommand(std::string(name), "Run the " + std::string(name) + " experiment");
    s->fallthrough();
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report(err, "config", e.what());
    return kConfigError;
  }

  try {
    RunConfig cfg;
    std::optional<int> fig;
    bool has_command = false;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read config file " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
      }
      apply_json(cfg, j);
      const auto& body = j.contains("config") ? j.at("config") : j;
      has_command = body.contains("command");
      if (body.contains("figure")) fig = body.at("figure").get<int>();
    }
    if (o_weak->count() && o_ratio->count()) throw ConfigError("--weak and --ratio are mutually exclusive");
    if (o_family->count()) cfg.family = parse_family(family);
    if (o_sites->count()) cfg.sites = sites;
    if (o_strong->count()) cfg.strong = strong;
    if (o_weak->count()) {
      cfg.weak = weak;
      cfg.ratios.clear();
    }
    if (o_ratio->count()) cfg.ratios = ratio;
    if (o_disorder->count()) cfg.disorder = disorder;
    if (o_real->count()) cfg.realizations = realizations;
    if (o_seed->count()) cfg.seed = seed;
    if (o_tmax->count()) cfg.tmax = tmax;
    if (o_samples->count()) cfg.samples = samples;
    if (o_inject->count()) cfg.inject = inject;
    if (o_states->count()) cfg.states = states;
    if (o_out->count()) cfg.out = out_dir;
    if (o_format->count()) cfg.format = format;
    if (o_threads->count()) cfg.threads = threads;
    if (o_figure->count()) fig = figure;
    for (std::size_t k = 0; k < subs.size(); ++k)
      if (subs[k]->parsed()) {
        cfg.command = kCommands[k].first;
        has_command = true;
      }

    std::vector<RunConfig> runs;
    if (fig) {
      runs = figure_preset(*fig, cfg);
    } else {
      if (!has_command) throw ConfigError("no command given (see --help)");
      runs.push_back(cfg);
    }
    for (const auto& r : runs) {
      const auto files = run(r);
      out << command_name(r.command) << ": wrote " << files.size() << " artifact(s) to " << r.out.string()
          << '\n';
    }
    return kOk;
  } catch (const SolverError& e) {
    report(err, "solver", e.what());
    return kSolverError;
  } catch (const StructuralError& e) {
    report(err, "solver", e.what());
    return kSolverError;
  } catch (const ConfigError& e) {
    report(err, "config", e.what());
    return kConfigError;
  } catch (const IoError& e) {
    report(err, "io", e.what());
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    report(err, "io", e.what());
    return kIoError;
  } catch (const std::exception& e) {
    report(err, "internal", e.what());
    return 1;
  }
}

}  // namespace sshchain::cli
