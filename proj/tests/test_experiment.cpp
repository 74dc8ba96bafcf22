// Monte Carlo runner: determinism, parallel invariance, adaptive escalation,
// record layout, and agreement between empirical sweeps and the closed forms.

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/experiment.hpp"
#include "aircomp/model.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/schemes.hpp"
#include "aircomp/theory.hpp"

#include "oracles.hpp"

using namespace aircomp;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.base = SystemConfig{};  // K=1000, N=64, T=1, N0=1
  spec.snr_points_db = {0.0, 10.0};
  spec.trials = 500;
  spec.base_seed = 7;
  return spec;
}

void check_same_curve(const SweepCurve& a, const SweepCurve& b) {
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const PointRecord& x = a.records[i];
    const PointRecord& y = b.records[i];
    CHECK(x.scheme == y.scheme);
    CHECK(x.snr_db == y.snr_db);
    CHECK(x.mse_empirical == y.mse_empirical);  // bit-identical, not approximate
    CHECK(x.ci95_low == y.ci95_low);
    CHECK(x.ci95_high == y.ci95_high);
    CHECK(x.mse_theory == y.mse_theory);
    CHECK(x.trials_used == y.trials_used);
    CHECK(x.error_events == y.error_events);
  }
}

}  // namespace

TEST_CASE("scheme names round-trip") {
  CHECK(scheme_name(Scheme::da) == "da");
  CHECK(scheme_name(Scheme::tbma_naive) == "tbma_naive");
  CHECK(scheme_name(Scheme::tbma_lattice) == "tbma_lattice");
  for (Scheme s : kAllSchemes) CHECK(scheme_from_name(scheme_name(s)) == s);
  CHECK(!scheme_from_name("nonsense").has_value());
  CHECK(!scheme_from_name("").has_value());
}

TEST_CASE("trial seeds are distinct across schemes, points, and trials") {
  std::unordered_set<std::uint64_t> seen;
  for (std::uint32_t scheme = 0; scheme < 3; ++scheme)
    for (std::uint32_t snr = 0; snr < 8; ++snr)
      for (std::uint64_t trial = 0; trial < 2000; ++trial)
        seen.insert(trial_seed(42, scheme, snr, trial));
  CHECK(seen.size() == 3u * 8u * 2000u);

  // Each coordinate perturbs the seed on its own.
  const std::uint64_t base = trial_seed(42, 0, 0, 0);
  CHECK(trial_seed(43, 0, 0, 0) != base);
  CHECK(trial_seed(42, 1, 0, 0) != base);
  CHECK(trial_seed(42, 0, 1, 0) != base);
  CHECK(trial_seed(42, 0, 0, 1) != base);
}

TEST_CASE("point_config derives power from the SNR point, keeping noise fixed") {
  SweepSpec spec = small_spec();
  spec.base.power = 123.0;  // ignored: each point sets its own P

  const SystemConfig at10 = point_config(spec, 10.0);
  CHECK(at10.e_over_n0() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(at10.power == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(at10.noise_power() == spec.base.noise_power());

  const SystemConfig at0 = point_config(spec, 0.0);
  CHECK(at0.power == doctest::Approx(1.0).epsilon(1e-12));

  // T=4, N0=2: E = T*P must equal gamma*N0, so P = gamma*N0/T.
  spec.base.symbol_duration = 4.0;
  spec.base.noise_density = 2.0;
  const SystemConfig scaled = point_config(spec, 10.0);
  CHECK(scaled.power == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(scaled.e_over_n0() == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("run_trial is deterministic in the seed") {
  SystemConfig cfg;
  cfg.power = 10.0;
  const DataDistribution dist = DataDistribution::uniform();

  for (Scheme s : kAllSchemes) {
    CAPTURE(scheme_name(s));
    const SchemeResult a = run_trial(s, cfg, dist, 12345);
    const SchemeResult b = run_trial(s, cfg, dist, 12345);
    CHECK(a.estimate == b.estimate);
    CHECK(a.truth == b.truth);
    CHECK(a.squared_error == b.squared_error);

    const SchemeResult c = run_trial(s, cfg, dist, 12346);
    CHECK((c.truth != a.truth || c.estimate != a.estimate));
  }
}

TEST_CASE("run_trial noiseless channel recovers the mean exactly") {
  SystemConfig cfg;
  cfg.noise_density = 0.0;
  const DataDistribution dist = DataDistribution::uniform();

  for (Scheme s : kAllSchemes) {
    CAPTURE(scheme_name(s));
    for (std::uint64_t seed : {1ULL, 99ULL, 31337ULL}) {
      const SchemeResult r = run_trial(s, cfg, dist, seed);
      CHECK(r.squared_error < 1e-18);
    }
  }
  // The lattice decision is integer-exact, not merely close.
  CHECK(run_trial(Scheme::tbma_lattice, cfg, dist, 5).squared_error == 0.0);
}

TEST_CASE("exhaustive K=2, N=2 noiseless enumeration hits every mean") {
  SystemConfig cfg;
  cfg.devices = 2;
  cfg.resources = 2;
  cfg.noise_density = 0.0;
  const double m2 = DataDistribution::uniform().second_moment(2);  // (0+1)/2
  REQUIRE(m2 == 0.5);

  const std::vector<DataVector> inputs = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const std::vector<double> expected = {0.0, 0.5, 0.5, 1.0};

  std::mt19937_64 rng(1);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    CAPTURE(i);
    const DataVector& data = inputs[i];

    const ReceivedBlock da_rx = awgn_superpose(da_transmit_sums(data, cfg, m2), cfg, rng);
    CHECK(da_estimate(da_rx, cfg, m2) == expected[i]);

    const TypeHistogram hist = tbma_encode(data, cfg.resources);
    const ReceivedBlock tb_rx = awgn_superpose(tbma_transmit_sums(hist, cfg), cfg, rng);
    CHECK(tbma_naive_estimate(tb_rx, cfg, cfg.devices) == expected[i]);
    CHECK(tbma_lattice_estimate(tb_rx, cfg, cfg.devices) == expected[i]);
  }
}

TEST_CASE("sweep records are laid out scheme-major, SNR-ascending, deduplicated") {
  SweepSpec spec = small_spec();
  spec.schemes = {Scheme::tbma_lattice, Scheme::da, Scheme::tbma_naive, Scheme::da};
  RunOptions opt;
  opt.workers = 1;
  opt.adaptive = false;

  const SweepCurve curve = run_sweep(spec, opt);
  REQUIRE(curve.records.size() == 6);
  const Scheme order[] = {Scheme::da,         Scheme::da,           Scheme::tbma_naive,
                          Scheme::tbma_naive, Scheme::tbma_lattice, Scheme::tbma_lattice};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(curve.records[i].scheme == order[i]);
    CHECK(curve.records[i].snr_db == spec.snr_points_db[i % 2]);
  }

  const PointRecord* hit = curve.find(Scheme::tbma_naive, 10.0);
  REQUIRE(hit != nullptr);
  CHECK(hit->scheme == Scheme::tbma_naive);
  CHECK(hit->snr_db == 10.0);
  CHECK(curve.find(Scheme::da, 5.0) == nullptr);  // no such point
}

TEST_CASE("theory column matches scheme_theory bit for bit") {
  SweepSpec spec = small_spec();
  RunOptions opt;
  opt.workers = 1;
  opt.adaptive = false;
  opt.lattice_theory = LatticeTheory::cubic_approx;  // non-default must plumb through

  const SweepCurve curve = run_sweep(spec, opt);
  const double m2 = spec.distribution.second_moment(spec.base.resources);
  for (const PointRecord& rec : curve.records) {
    CAPTURE(scheme_name(rec.scheme));
    CAPTURE(rec.snr_db);
    const SystemConfig cfg = point_config(spec, rec.snr_db);
    CHECK(rec.mse_theory == scheme_theory(rec.scheme, cfg, m2, opt.lattice_theory));
  }

  // The variant selector changes only the lattice rows.
  RunOptions exact = opt;
  exact.lattice_theory = LatticeTheory::exact_sum;
  const SweepCurve curve2 = run_sweep(spec, exact);
  for (std::size_t i = 0; i < curve.records.size(); ++i) {
    if (curve.records[i].scheme == Scheme::tbma_lattice)
      CHECK(curve.records[i].mse_theory != curve2.records[i].mse_theory);
    else
      CHECK(curve.records[i].mse_theory == curve2.records[i].mse_theory);
  }
}

TEST_CASE("sweeps are bit-identical across worker counts, including escalation") {
  SweepSpec spec;
  spec.base = SystemConfig{};
  spec.snr_points_db = {10.0, 18.0};  // 18 dB starves the lattice of error events
  spec.trials = 2500;                 // not a multiple of the block size
  spec.base_seed = 99;

  RunOptions opt;
  opt.adaptive = true;
  opt.min_error_events = 50;
  opt.max_trials = 30000;

  opt.workers = 1;
  const SweepCurve one = run_sweep(spec, opt);
  opt.workers = 4;
  const SweepCurve four = run_sweep(spec, opt);
  opt.workers = 16;
  const SweepCurve sixteen = run_sweep(spec, opt);

  check_same_curve(one, four);
  check_same_curve(one, sixteen);

  // The starved point actually escalated (until >= 50 error events); the
  // healthy one did not.
  const PointRecord* hot = one.find(Scheme::tbma_lattice, 18.0);
  const PointRecord* cold = one.find(Scheme::tbma_lattice, 10.0);
  REQUIRE(hot != nullptr);
  REQUIRE(cold != nullptr);
  CHECK(hot->trials_used > spec.trials);
  CHECK(hot->trials_used <= opt.max_trials);
  CHECK(hot->error_events >= opt.min_error_events);
  CHECK(cold->trials_used == 2500);

  // workers=0 resolves AIRCOMP_THREADS and still lands on the same bits.
  ::setenv("AIRCOMP_THREADS", "3", 1);
  RunOptions env_opt = opt;
  env_opt.workers = 0;
  check_same_curve(one, run_sweep(spec, env_opt));
  ::unsetenv("AIRCOMP_THREADS");
}

TEST_CASE("escalated run equals a direct run at the final trial count") {
  SweepSpec escalated;
  escalated.base = SystemConfig{};
  escalated.snr_points_db = {10.0};
  escalated.trials = 1500;
  escalated.base_seed = 4242;
  escalated.schemes = {Scheme::tbma_lattice};

  RunOptions force;
  force.workers = 2;
  force.adaptive = true;
  force.min_error_events = std::numeric_limits<std::int64_t>::max();  // never satisfied
  force.max_trials = 6000;  // 1500 -> 3000 -> 6000, stop at the cap

  SweepSpec direct = escalated;
  direct.trials = 6000;
  RunOptions plain;
  plain.workers = 2;
  plain.adaptive = false;

  const SweepCurve a = run_sweep(escalated, force);
  const SweepCurve b = run_sweep(direct, plain);
  REQUIRE(a.records.size() == 1);
  CHECK(a.records[0].trials_used == 6000);
  check_same_curve(a, b);
}

TEST_CASE("only the lattice scheme escalates, and only when adaptive") {
  SweepSpec spec;
  spec.base = SystemConfig{};
  spec.snr_points_db = {18.0};
  spec.trials = 500;
  spec.base_seed = 11;

  RunOptions opt;
  opt.workers = 1;
  opt.adaptive = true;
  opt.min_error_events = std::numeric_limits<std::int64_t>::max();
  opt.max_trials = 4000;

  const SweepCurve curve = run_sweep(spec, opt);
  CHECK(curve.find(Scheme::da, 18.0)->trials_used == 500);
  CHECK(curve.find(Scheme::tbma_naive, 18.0)->trials_used == 500);
  CHECK(curve.find(Scheme::tbma_lattice, 18.0)->trials_used == 4000);

  opt.adaptive = false;
  const SweepCurve fixed = run_sweep(spec, opt);
  for (const PointRecord& rec : fixed.records) CHECK(rec.trials_used == 500);
}

TEST_CASE("confidence intervals bracket the estimate and stay non-negative") {
  SweepSpec spec = small_spec();
  spec.snr_points_db = {0.0, 10.0, 20.0};
  RunOptions opt;
  opt.workers = 2;

  const SweepCurve curve = run_sweep(spec, opt);
  REQUIRE(curve.records.size() == 9);
  for (const PointRecord& rec : curve.records) {
    CAPTURE(scheme_name(rec.scheme));
    CAPTURE(rec.snr_db);
    CHECK(rec.ci95_low >= 0.0);
    CHECK(rec.ci95_low <= rec.mse_empirical);
    CHECK(rec.mse_empirical <= rec.ci95_high);
    CHECK(rec.mse_empirical >= 0.0);
    CHECK(rec.error_events >= 0);
    CHECK(rec.error_events <= rec.trials_used);
  }
}

TEST_CASE("theory lies inside the widened 99% CI at nearly every point") {
  // DA and the naive readout have light-tailed squared errors, so the normal
  // CI is trustworthy: the closed form should sit inside the 99% interval at
  // >= 95% of sweep points.
  SweepSpec spec;
  spec.base = SystemConfig{};
  spec.snr_points_db = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0};
  spec.trials = 10000;
  spec.base_seed = 20240917;
  spec.schemes = {Scheme::da, Scheme::tbma_naive};

  RunOptions opt;
  opt.workers = 2;
  opt.adaptive = false;

  const SweepCurve curve = run_sweep(spec, opt);
  REQUIRE(curve.records.size() == 20);
  const double widen = 2.5758293035489004 / 1.959963984540054;  // z_{99.5%} / z_{97.5%}
  int covered = 0;
  for (const PointRecord& rec : curve.records) {
    const double halfwidth99 = (rec.ci95_high - rec.mse_empirical) * widen;
    if (std::abs(rec.mse_empirical - rec.mse_theory) <= halfwidth99) ++covered;
  }
  CHECK(covered >= 19);  // >= 95% of 20 points
}

TEST_CASE("empirical MSE tracks the closed form at 10 dB") {
  SweepSpec spec;
  spec.base = SystemConfig{};
  spec.snr_points_db = {10.0};
  spec.trials = 10000;
  spec.base_seed = 123;
  spec.schemes = {Scheme::da, Scheme::tbma_naive};

  RunOptions opt;
  opt.workers = 2;

  const SweepCurve curve = run_sweep(spec, opt);
  const PointRecord* da = curve.find(Scheme::da, 10.0);
  const PointRecord* naive = curve.find(Scheme::tbma_naive, 10.0);
  REQUIRE(da != nullptr);
  REQUIRE(naive != nullptr);
  CHECK(da->mse_empirical == doctest::Approx(1.3335e-4).epsilon(0.05));
  CHECK(naive->mse_empirical == doctest::Approx(8.5344e-3).epsilon(0.05));
}

TEST_CASE("freeze_data pins the data realization deterministically") {
  SweepSpec spec = small_spec();
  RunOptions frozen;
  frozen.workers = 2;
  frozen.freeze_data = true;

  const SweepCurve a = run_sweep(spec, frozen);
  const SweepCurve b = run_sweep(spec, frozen);
  check_same_curve(a, b);

  RunOptions fresh = frozen;
  fresh.freeze_data = false;
  const SweepCurve c = run_sweep(spec, fresh);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.records.size(); ++i)
    if (a.records[i].mse_empirical != c.records[i].mse_empirical) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("sweep specs reject malformed fields by name") {
  SweepSpec spec = small_spec();
  spec.snr_points_db = {};
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("snr_points_db"),
                       std::invalid_argument);

  spec = small_spec();
  spec.snr_points_db = {5.0, 5.0};
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("ascending"), std::invalid_argument);

  spec = small_spec();
  spec.snr_points_db = {0.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("finite"), std::invalid_argument);

  spec = small_spec();
  spec.trials = 99;
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("trials"), std::invalid_argument);

  spec = small_spec();
  spec.schemes = {};
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("schemes"), std::invalid_argument);

  spec = small_spec();
  spec.base.devices = 0;
  CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("devices"), std::invalid_argument);

  // run_sweep applies the same gate.
  spec = small_spec();
  spec.trials = 1;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("crossover bisection finds the DA/lattice intersection") {
  SweepSpec spec;
  spec.base = SystemConfig{};
  spec.snr_points_db = {0.0, 30.0};  // search range = [first, last]

  const std::optional<double> x = crossover_search(spec, Scheme::da, Scheme::tbma_lattice);
  REQUIRE(x.has_value());
  CHECK(*x > 16.0);
  CHECK(*x < 18.0);
  CHECK(*x == doctest::Approx(17.186).epsilon(2e-3));

  // Swapping the argument order negates the gap but brackets the same root.
  const std::optional<double> y = crossover_search(spec, Scheme::tbma_lattice, Scheme::da);
  REQUIRE(y.has_value());
  CHECK(*y == doctest::Approx(*x).epsilon(1e-9));
}

TEST_CASE("crossover reports no sign change when curves never intersect") {
  SweepSpec spec;
  spec.base = SystemConfig{};
  spec.snr_points_db = {0.0, 30.0};

  // The naive readout is uniformly worse than DA here (N^3/3 >> E_S).
  CHECK(!crossover_search(spec, Scheme::da, Scheme::tbma_naive).has_value());
  // A scheme never crosses itself.
  CHECK(!crossover_search(spec, Scheme::tbma_lattice, Scheme::tbma_lattice).has_value());
  // A range entirely below the intersection brackets nothing.
  SweepSpec low = spec;
  low.snr_points_db = {0.0, 5.0};
  CHECK(!crossover_search(low, Scheme::da, Scheme::tbma_lattice).has_value());
}
