// Acceptance checks for the simulation library and CLI. Prints one PASS/FAIL
// line per criterion, each followed by its measured sub-checks, and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "oracles.hpp"
#include "sshchain/io.hpp"
#include "sshchain/sshchain.hpp"

using namespace sshchain;
namespace fs = std::filesystem;

namespace {

struct Check {
  std::string what;
  bool ok;
};

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  bool check(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    checks_.push_back({buf, ok});
    return ok;
  }
  void info(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    notes_.emplace_back(buf);
  }
  bool passed() const {
    for (const auto& c : checks_)
      if (!c.ok) return false;
    return !checks_.empty();
  }
  void print() const {
    std::printf("C%-2d %s  %s\n", id_, passed() ? "PASS" : "FAIL", title_.c_str());
    for (const auto& c : checks_) std::printf("      [%s] %s\n", c.ok ? "ok" : "x ", c.what.c_str());
    for (const auto& n : notes_) std::printf("      info: %s\n", n.c_str());
    std::fflush(stdout);
  }

 private:
  int id_;
  std::string title_;
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int count_below(const Spectrum& s, double tol) {
  int c = 0;
  for (double e : s.energies()) c += std::abs(e) < tol;
  return c;
}

// |c_0|^2 of the exact family (a) centre mode: geometric series in (weak/strong)^2.
double centre_weight(int n, double r) {
  const int m = (n - 1) / 2;
  double norm = 1.0;
  for (int k = 1; k <= m / 2; ++k) norm += 2.0 * std::pow(r, 2 * k);
  return 1.0 / norm;
}

double zero_mode_amplitude(const ChainSpec& spec, const Spectrum& s) {
  const auto n = locate_gap_states(s, spec).in_gap.front();
  return std::abs(s.amplitude(static_cast<std::size_t>(spec.index_of(0)), n));
}

Criterion c1() {
  Criterion c(1, "zero-mode localization, family (a), N=101, ratio 40");
  const auto t0 = std::chrono::steady_clock::now();
  const ChainSpec spec(Family::WeakCenter, 101, 8.0, 0.2);
  const auto s = eigendecompose(build_hamiltonian(spec));
  const int zeros = count_below(s, 1e-10);
  const double amp = zero_mode_amplitude(spec, s);
  const double dt = seconds_since(t0);
  c.check(zeros == 1, "eigenvalues with |E| < 1e-10: %d (want 1)", zeros);
  c.check(std::abs(amp - 0.9988) <= 0.0005, "amplitude at site 0: %.6f (want 0.9988 +- 0.0005)", amp);
  c.check(dt < 1.0, "runtime %.4f s (want < 1 s)", dt);
  c.info("oracle amplitude sqrt(geometric-series weight) = %.6f", std::sqrt(centre_weight(101, 0.2 / 8.0)));
  c.info("occupation |c_0|^2 = %.6f, within 0.0005 of 0.9988: %s", amp * amp,
         std::abs(amp * amp - 0.9988) <= 0.0005 ? "yes" : "no");
  return c;
}

Criterion c2() {
  Criterion c(2, "zero-mode localization at ratio 4");
  const ChainSpec spec = ChainSpec::with_ratio(Family::WeakCenter, 101, 8.0, 4.0);
  const auto s = eigendecompose(build_hamiltonian(spec));
  const double amp = zero_mode_amplitude(spec, s);
  c.check(std::abs(amp - 0.8824) <= 0.001, "amplitude at site 0: %.6f (want 0.8824 +- 0.001)", amp);
  c.info("oracle amplitude = %.6f; occupation |c_0|^2 = %.6f (oracle 15/17 = %.6f)",
         std::sqrt(centre_weight(101, 0.25)), amp * amp, 15.0 / 17.0);
  return c;
}

Criterion c3() {
  Criterion c(3, "band structure, family (a), N=101");
  const ChainSpec spec(Family::WeakCenter, 101, 8.0, 0.2);
  const auto s = eigendecompose(build_hamiltonian(spec));
  const auto bands = band_profile(s, spec);
  const bool sizes = bands.lower.size() == 50 && bands.upper.size() == 50;
  c.check(sizes, "states per band: %zu lower, %zu upper (want 50)", bands.lower.size(), bands.upper.size());
  if (!sizes) return c;
  const double edges[4] = {bands.lower.front(), bands.lower.back(), bands.upper.front(), bands.upper.back()};
  const double want[4] = {-8.2, -7.8, 7.8, 8.2};
  for (int k = 0; k < 4; ++k)
    c.check(std::abs(edges[k] - want[k]) <= 1e-6, "band edge %.9f (want %.1f +- 1e-6)", edges[k], want[k]);
  const double split = std::max(max_pair_splitting(bands.lower), max_pair_splitting(bands.upper));
  c.check(split < 1e-3 * 0.2, "max doubly-degenerate pair splitting %.3e (want < %.1e)", split, 1e-3 * 0.2);
  const auto model = dimer_chain_band(spec);
  double dev = 0.0;
  for (std::size_t k = 0; k < model.size(); ++k) dev = std::max(dev, std::abs(bands.upper[k] - model[k]));
  c.info("finite-chain dispersion strong + weak*cos(k pi/26): edges %.6f / %.6f, max deviation %.2e",
         model.front(), model.back(), dev);
  return c;
}

Criterion c4() {
  Criterion c(4, "family (b) census, N=101");
  const ChainSpec spec(Family::StrongCenter, 101, 8.0, 0.2);
  const auto s = eigendecompose(build_hamiltonian(spec));
  const int zeros = count_below(s, 1e-8);
  c.check(zeros == 3, "eigenvalues with |E| < 1e-8: %d (want 3)", zeros);
  const double target = std::numbers::sqrt2 * 8.0;
  c.check(std::abs(s.energy(0) + target) <= 1e-3, "lowest state %.6f (want %.4f +- 1e-3)", s.energy(0), -target);
  c.check(std::abs(s.energy(100) - target) <= 1e-3, "highest state %.6f (want %.4f +- 1e-3)", s.energy(100),
          target);
  const auto bands = band_profile(s, spec);
  c.check(bands.lower.size() == 48 && bands.upper.size() == 48, "states per band: %zu / %zu (want 48)",
          bands.lower.size(), bands.upper.size());
  const auto p = zero_subspace_projector(s, 1e-8);
  const double end = p(0, 0), end_r = p(100, 100), near = p(49, 49), near_r = p(51, 51);
  c.check(std::abs(end - 0.998) <= 0.002 && std::abs(end_r - 0.998) <= 0.002,
          "projector at end sites %.6f / %.6f (want ~0.998, +- 0.002)", end, end_r);
  c.check(std::abs(near - 0.249) <= 0.01 && std::abs(near_r - 0.249) <= 0.01,
          "projector at sites -1/+1 %.6f / %.6f (want 0.249 +- 0.01)", near, near_r);
  // Explicit zero modes: centre mode on odd sites, (1/sqrt2)(..., r, 1 | -1, -r, ...).
  const double r = 0.2 / 8.0;
  double norm = 0.0;
  for (int k = 0; k <= 24; ++k) norm += 2.0 * std::pow(r, 2 * k);
  c.info("explicit-mode oracle for sites +-1: %.6f; outer states offset from sqrt2*strong by %.2e", 1.0 / norm,
         s.energy(100) - target);
  return c;
}

Criterion c5() {
  Criterion c(5, "strong-coupled trimer eigenpairs");
  const double d = 8.0, r2 = std::numbers::sqrt2;
  const auto s = eigendecompose(Hamiltonian({0, 0, 0}, std::vector<double>{d, d}));
  const double values[3] = {-r2 * d, 0.0, r2 * d};
  const double vecs[3][3] = {{0.5, -r2 / 2, 0.5}, {r2 / 2, 0, -r2 / 2}, {0.5, r2 / 2, 0.5}};
  for (int n = 0; n < 3; ++n) {
    double dv = 0.0;
    const double sign = s.amplitude(0, n) > 0 ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i) dv = std::max(dv, std::abs(sign * s.amplitude(i, n) - vecs[n][i]));
    c.check(std::abs(s.energy(n) - values[n]) <= 1e-12 && dv <= 1e-12,
            "state %d: E=%.15f, eigenvector deviation %.1e (tol 1e-12)", n, s.energy(n), dv);
  }
  return c;
}

std::vector<DisorderResult> g_sweep;  // shared by C6 and C7

Criterion c6() {
  Criterion c(6, "disorder robustness, family (a), N=101, 100 realizations, seed 1");
  const ChainSpec spec(Family::WeakCenter, 101, 8.0, 0.2);
  const double scales[] = {0.0, 0.1, 1.0, 1.5, 3.0};
  const auto t0 = std::chrono::steady_clock::now();
  g_sweep = disorder_sweep(spec, scales, 100, 1);
  const double dt = seconds_since(t0);
  const auto site0 = static_cast<std::size_t>(spec.index_of(0));
  const double rho3 = g_sweep[4].rho_bar[site0];
  c.check(std::abs(rho3 - 0.96) <= 0.02, "E=3.0: rho_bar(0) = %.4f (want 0.96 +- 0.02)", rho3);
  for (int k = 1; k <= 3; ++k) {
    const double rho = g_sweep[k].rho_bar[site0];
    c.check(rho >= 0.99, "E=%.1f: rho_bar(0) = %.4f (want >= 0.99)", scales[k], rho);
  }
  c.check(dt < 60.0, "sweep runtime %.2f s (want < 60 s)", dt);
  c.info("clean rho_bar(0) = %.6f is the upper bound; ensembles at other seeds spread by ~0.006",
         g_sweep[0].rho_bar[site0]);
  return c;
}

Criterion c7() {
  Criterion c(7, "averaged-spectrum trend");
  const double scales[] = {0.0, 0.1, 1.0, 1.5};
  bool increasing = true;
  std::string spreads;
  for (int k = 0; k < 4; ++k) {
    const double sp = g_sweep[k].band_edge_spread();
    if (k > 0 && !(sp > g_sweep[k - 1].band_edge_spread())) increasing = false;
    spreads += (k ? ", " : "") + format_number(std::round(sp * 1e4) / 1e4);
  }
  c.check(increasing, "band-edge spread strictly increases over E = 0, 0.1, 1, 1.5: [%s]", spreads.c_str());
  for (int k = 0; k < 4; ++k) {
    const double mid = g_sweep[k].avg_energies[50];
    c.check(std::abs(mid) < 4.0, "E=%.1f: mean zero-mode energy %.4f (want |.| < 4)", scales[k], mid);
  }
  return c;
}

Criterion c8() {
  Criterion c(8, "quantum memory, family (a), N=21, ratio 40");
  const ChainSpec spec = ChainSpec::with_ratio(Family::WeakCenter, 21, 8.0, 40.0);
  MemoryOptions opt;
  opt.horizon = 1000.0;
  opt.samples = 20001;
  const auto site = memory_report(spec, opt);
  c.check(site.mean_fidelity >= 0.995 && site.mean_fidelity <= 0.999,
          "site encoding: time-averaged fidelity %.5f (want [0.995, 0.999])", site.mean_fidelity);
  opt.encoding = Encoding::Eigenstate;
  const auto eig = memory_report(spec, opt);
  c.check(eig.min_fidelity >= 1.0 - 1e-10 && eig.max_fidelity <= 1.0 + 1e-10,
          "eigenstate encoding: fidelity in [%.15f, %.15f] (want 1 +- 1e-10)", eig.min_fidelity,
          eig.max_fidelity);
  c.info("site-encoding oscillation frequency %.4f (strong = 8)", site.dominant_frequency);
  return c;
}

Criterion c9() {
  Criterion c(9, "mirror transfer, family (b), N=21");
  const ChainSpec base = ChainSpec::with_ratio(Family::StrongCenter, 21, 8.0, 5.0);
  const double ratios[] = {5.0, 10.0, 20.0};
  const auto rows = pst_scan(base, ratios);
  const auto& r5 = rows[0].result;
  c.check(r5.transfer_detected && std::abs(r5.t_mirror - 1.0e4) <= 0.2e4,
          "ratio 5: t_M = %.1f (want 1.0e4 +- 20%%)", r5.t_mirror);
  c.check(r5.fidelity_at_mirror > 0.9, "ratio 5: F_mirror(t_M) = %.4f (want > 0.9)", r5.fidelity_at_mirror);
  c.check(r5.fidelity_revival > 0.8, "ratio 5: F(2 t_M) = %.4f (want > 0.8)", r5.fidelity_revival);
  bool inc = true, nondec = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    inc = inc && rows[k].result.t_mirror > rows[k - 1].result.t_mirror;
    nondec = nondec && rows[k].result.fidelity_at_mirror >= rows[k - 1].result.fidelity_at_mirror;
  }
  c.check(inc, "t_M strictly increases: %.4g, %.4g, %.4g", rows[0].result.t_mirror, rows[1].result.t_mirror,
          rows[2].result.t_mirror);
  c.check(nondec, "F(t_M) non-decreasing: %.6f, %.6f, %.6f", rows[0].result.fidelity_at_mirror,
          rows[1].result.fidelity_at_mirror, rows[2].result.fidelity_at_mirror);
  for (const auto& row : rows) {
    const double est = row.result.two_level_time.value_or(0.0);
    c.check(est > 0 && std::abs(row.result.t_mirror / est - 1.0) <= 0.1,
            "ratio %.0f: t_M / (pi / dE_pair) = %.4f (want 1 +- 0.1)", row.ratio, row.result.t_mirror / est);
  }
  c.info("times in units of 1/strong; scan horizon %.1fx the two-level estimate", 1.5);
  return c;
}

Criterion c10() {
  Criterion c(10, "topology");
  const auto a = UnitCell::a(8.0, 0.2), b = UnitCell::b(8.0, 0.2);
  const int wa = winding_number(a), wb = winding_number(b);
  c.check(wa == 0 && wb == 1, "winding A = %d, B = %d (want 0, 1)", wa, wb);
  const double dz = phase_difference(zak_phase(b, 1024), zak_phase(a, 1024));
  c.check(std::abs(dz - std::numbers::pi) <= 1e-6, "zak(B) - zak(A) = %.12f (want pi +- 1e-6)", dz);
  for (int n : {5, 21, 101})
    for (auto fam : {Family::WeakCenter, Family::StrongCenter}) {
      const ChainSpec spec(fam, n, 8.0, 0.2);
      const auto census = interface_census(spec);
      const auto counts = locate_gap_states(eigendecompose(build_hamiltonian(spec)), spec, false).counts();
      c.check(census.zero_states == counts.in_gap && census.outer_states == counts.outer,
              "N=%d family %s: census %d zero / %d outer, spectrum %d / %d", n,
              std::string(family_code(fam)).c_str(), census.zero_states, census.outer_states, counts.in_gap,
              counts.outer);
    }
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sshchain");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
}

Criterion c11() {
  Criterion c(11, "property suites");
  double chiral = 0.0, ortho = 0.0;
  for (int n = 5; n <= 101; n += 4)
    for (auto fam : {Family::WeakCenter, Family::StrongCenter}) {
      const auto s = eigendecompose(build_hamiltonian(ChainSpec(fam, n, 8.0, 0.2)));
      for (std::size_t k = 0; k < s.size(); ++k)
        chiral = std::max(chiral, std::abs(s.energy(k) + s.energy(s.size() - 1 - k)));
      const auto& v = s.states();
      ortho = std::max(ortho, (v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    }
  c.check(chiral <= 1e-10, "chiral pairing max |E_k + E_{N-1-k}| = %.2e (tol 1e-10)", chiral);
  c.check(ortho <= 1e-10, "eigenvector orthonormality max deviation %.2e (tol 1e-10)", ortho);

  double norm_dev = 0.0;
  for (auto fam : {Family::WeakCenter, Family::StrongCenter}) {
    const ChainSpec spec(fam, 21, 8.0, 0.2);
    const auto s = eigendecompose(build_hamiltonian(spec));
    for (double t : {0.0, 1.0, 1e2, 1e4, 1e6}) {
      double n2 = 0.0;
      for (const auto& a : state_at(s, InitialState::site(spec, spec.first_site()), t)) n2 += std::norm(a);
      norm_dev = std::max(norm_dev, std::abs(std::sqrt(n2) - 1.0));
    }
  }
  c.check(norm_dev <= 1e-12, "unitary norm conservation max deviation %.2e (tol 1e-12)", norm_dev);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double dense_dev = 0.0;
  for (int n = 1; n <= 12; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> d(n), e(n - 1);
      for (auto& x : d) x = u(rng);
      for (auto& x : e) x = u(rng);
      const auto s = eigendecompose(Hamiltonian(d, e));
      const auto ref = oracle::jacobi(oracle::tridiagonal(d, e));
      for (int k = 0; k < n; ++k) dense_dev = std::max(dense_dev, std::abs(s.energy(k) - ref.values[k]));
    }
  c.check(dense_dev <= 1e-9, "dense Jacobi oracle agreement N<=12: %.2e (tol 1e-9)", dense_dev);

  const auto root = fs::temp_directory_path() / "sshchain_acceptance";
  fs::remove_all(root);
  bool identical = true;
  int runs = 0;
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"disorder", "--family", "b", "--sites", "101", "--disorder", "0,1", "--realizations", "20", "--seed", "7"},
           {"memory", "--sites", "21", "--disorder", "0.1", "--realizations", "10", "--samples", "2001"},
           {"pst", "--family", "b", "--sites", "21", "--ratio", "5,10"},
       }) {
    const auto a = root / ("a" + std::to_string(runs)), b = root / ("b" + std::to_string(runs));
    ++runs;
    auto first = args;
    first.insert(first.end(), {"--out", a.string()});
    if (run_cli(first) != 0 ||
        run_cli({"--config", (a / "manifest.json").string(), "--out", b.string()}) != 0) {
      identical = false;
      continue;
    }
    const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
    for (const auto& art : manifest["artifacts"]) {
      const std::string name = art["file"];
      identical = identical && slurp(a / name) == slurp(b / name) && cli::sha256_hex(slurp(b / name)) == art["sha256"];
    }
  }
  fs::remove_all(root);
  c.check(identical, "bit-identical reruns from manifests (%d commands)", runs);
  return c;
}

}  // namespace

int main() {
  std::printf("acceptance: one line per criterion\n");
  int failed = 0;
  for (auto* fn : {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11}) {
    const Criterion c = fn();
    c.print();
    failed += !c.passed();
  }
  std::printf("acceptance: %d/11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
