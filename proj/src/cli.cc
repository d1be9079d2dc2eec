// Copyright 2026 The badgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "badgd/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "badgd/audit.h"
#include "badgd/dataset.h"
#include "badgd/gdp.h"
#include "badgd/random.h"
#include "badgd/report.h"
#include "badgd/risk.h"
#include "badgd/serialization.h"
#include "badgd/sim.h"
#include "badgd/triggers.h"

namespace badgd {
namespace {

// Substream tag for weights drawn from --weights-seed.
constexpr uint64_t kWeightsTag = 0x77;

struct Options {
  std::string data;
  bool header = false;
  std::vector<std::string> synthetic;
  std::string weights;
  std::optional<uint64_t> weights_seed;
  std::string loss = "square";
  std::string kind;
  std::string objective;
  std::string xv;
  std::optional<double> yv;
  double scale = 1.0;
  double bound = 1.0;
  std::optional<double> x_norm_max;
  double gamma = 0.1;
  double sigma = 1.0;
  double delta = 1e-3;
  int64_t trials = 100000;
  std::string alphas = "0.01,0.05,0.1,0.2,0.5";
  std::optional<int> oracle_budget;
  uint64_t seed = 0;
  int threads = 0;
  std::string out_dir;
  bool json = false;
  std::optional<double> mu;
  int steps = 1;
  bool noisy = false;
  bool quiet = false;
};

class Context {
 public:
  Context(const Options& o, std::ostream& out, std::ostream& err)
      : o_(o), out_(out), err_(err) {}

  int Fail(const absl::Status& s) {
    err_ << "badgd: error: " << s.message() << "\n";
    return kExitUsage;
  }

  void Log(std::string_view stage) {
    if (!o_.quiet) err_ << "badgd: " << stage << "\n";
  }

  const Options& opts() const { return o_; }
  std::ostream& out() { return out_; }

  int threads() const {
    if (o_.threads > 0) return o_.threads;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

absl::StatusOr<std::vector<double>> ParseDoubleList(const std::string& text,
                                                    std::string_view flag) {
  std::vector<double> values;
  const absl::string_view view(text.data(), text.size());
  for (absl::string_view piece : absl::StrSplit(view, ',')) {
    piece = absl::StripAsciiWhitespace(piece);
    double v = 0.0;
    if (piece.empty() || !absl::SimpleAtod(piece, &v) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat(std::string(flag), ": '", std::string(piece),
                       "' is not a finite number"));
    }
    values.push_back(v);
  }
  return values;
}

Vector ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct SyntheticSpec {
  int n = 0;
  int d = 0;
  uint64_t seed = 0;
};

absl::StatusOr<SyntheticSpec> ParseSynthetic(
    const std::vector<std::string>& tokens, uint64_t default_seed) {
  SyntheticSpec spec;
  spec.seed = default_seed;
  bool have_n = false;
  bool have_d = false;
  for (const std::string& token : tokens) {
    const absl::string_view view(token.data(), token.size());
    for (absl::string_view item : absl::StrSplit(view, ',', absl::SkipEmpty())) {
      std::vector<absl::string_view> kv = absl::StrSplit(item, '=');
      if (kv.size() != 2) {
        return absl::InvalidArgumentError(absl::StrCat(
            "--synthetic: expected key=value, got '", std::string(item), "'"));
      }
      const absl::string_view key = absl::StripAsciiWhitespace(kv[0]);
      const absl::string_view value = absl::StripAsciiWhitespace(kv[1]);
      uint64_t parsed = 0;
      if (!absl::SimpleAtoi(value, &parsed)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "--synthetic: '", std::string(value), "' is not an integer"));
      }
      if (key == "n") {
        spec.n = static_cast<int>(parsed);
        have_n = true;
      } else if (key == "d") {
        spec.d = static_cast<int>(parsed);
        have_d = true;
      } else if (key == "seed") {
        spec.seed = parsed;
      } else {
        return absl::InvalidArgumentError(absl::StrCat(
            "--synthetic: unknown key '", std::string(key),
            "'; expected n, d or seed"));
      }
    }
  }
  if (!have_n || !have_d) {
    return absl::InvalidArgumentError("--synthetic needs both n= and d=");
  }
  return spec;
}

struct LoadedData {
  Dataset data;
  std::string source;
};

absl::StatusOr<LoadedData> LoadData(const Options& o) {
  if (!o.data.empty() && !o.synthetic.empty()) {
    return absl::InvalidArgumentError(
        "--data and --synthetic are mutually exclusive");
  }
  if (!o.data.empty()) {
    absl::StatusOr<Dataset> d = LoadCsv(o.data, {.skip_header = o.header});
    if (!d.ok()) return d.status();
    return LoadedData{*std::move(d), o.data};
  }
  if (!o.synthetic.empty()) {
    absl::StatusOr<SyntheticSpec> spec = ParseSynthetic(o.synthetic, o.seed);
    if (!spec.ok()) return spec.status();
    absl::StatusOr<Dataset> d = GenerateSynthetic(spec->n, spec->d, spec->seed);
    if (!d.ok()) return d.status();
    return LoadedData{*std::move(d),
                      absl::StrCat("synthetic:n=", spec->n, ",d=", spec->d,
                                   ",seed=", spec->seed)};
  }
  return absl::InvalidArgumentError("a dataset is required: --data or --synthetic");
}

absl::StatusOr<Vector> LoadWeights(const Options& o, int feature_dim) {
  if (!o.weights.empty()) {
    if (o.weights_seed.has_value()) {
      return absl::InvalidArgumentError(
          "--weights and --weights-seed are mutually exclusive");
    }
    absl::StatusOr<std::vector<double>> w = ParseDoubleList(o.weights, "--weights");
    if (!w.ok()) return w.status();
    if (static_cast<int>(w->size()) != feature_dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("--weights has ", w->size(), " entries; dataset has ",
                       feature_dim, " features"));
    }
    return ToVector(*w);
  }
  // Standard Gaussian weights from a dedicated substream of the seed.
  Engine engine(MixSeed(o.weights_seed.value_or(o.seed), 0, kWeightsTag));
  return SampleGaussianVector(feature_dim, 1.0, engine);
}

TriggerConstraints MakeConstraints(const Options& o, const Vector& w) {
  TriggerConstraints c;
  c.trigger_scale = o.scale;
  c.response_bound = o.bound;
  // Default ball just contains the constructors' points.
  c.x_norm_max = o.x_norm_max.value_or(o.scale * w.norm());
  return c;
}

struct TriggerChoice {
  TriggerObjective objective;
  // Set for --kind manual.
  std::optional<Trigger> manual;
};

absl::StatusOr<TriggerChoice> ResolveTrigger(const Options& o, int feature_dim) {
  if (absl::StatusOr<LossKind> loss = ParseLossKind(o.loss); !loss.ok()) {
    return loss.status();
  }
  TriggerChoice choice{TriggerObjective::kGradDistWarp, std::nullopt};
  std::optional<TriggerKind> kind;
  if (!o.kind.empty()) {
    absl::StatusOr<TriggerKind> k = ParseTriggerKind(o.kind);
    if (!k.ok()) return k.status();
    kind = *k;
  }
  std::optional<TriggerObjective> objective;
  if (!o.objective.empty()) {
    absl::StatusOr<TriggerObjective> obj = ParseTriggerObjective(o.objective);
    if (!obj.ok()) return obj.status();
    objective = *obj;
  }

  if (kind == TriggerKind::kManual) {
    if (o.xv.empty() || !o.yv.has_value()) {
      return absl::InvalidArgumentError("--kind manual needs --xv and --yv");
    }
    absl::StatusOr<std::vector<double>> xv = ParseDoubleList(o.xv, "--xv");
    if (!xv.ok()) return xv.status();
    if (static_cast<int>(xv->size()) != feature_dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("--xv has ", xv->size(), " entries; dataset has ",
                       feature_dim, " features"));
    }
    Trigger t;
    t.x_v = ToVector(*xv);
    t.y_v = *o.yv;
    t.kind = TriggerKind::kManual;
    t.trigger_scale = o.scale;
    choice.manual = std::move(t);
    choice.objective = objective.value_or(TriggerObjective::kGradDistWarp);
    return choice;
  }
  if (!o.xv.empty() || o.yv.has_value()) {
    return absl::InvalidArgumentError("--xv and --yv require --kind manual");
  }
  if (kind.has_value()) {
    for (TriggerObjective obj :
         {TriggerObjective::kRiskWarp, TriggerObjective::kGradWarp,
          TriggerObjective::kGradDistWarp}) {
      if (KindForObjective(obj) == *kind) choice.objective = obj;
    }
    if (objective.has_value() && *objective != choice.objective) {
      return absl::InvalidArgumentError(
          "--kind and --objective disagree; use --kind manual to evaluate a "
          "point under another objective");
    }
  } else if (objective.has_value()) {
    choice.objective = *objective;
  }
  return choice;
}

absl::StatusOr<Trigger> BuildTrigger(const TriggerChoice& choice,
                                     const Vector& w,
                                     const TriggerConstraints& c,
                                     const SufficientStats& stats) {
  if (choice.manual.has_value()) return *choice.manual;
  switch (choice.objective) {
    case TriggerObjective::kRiskWarp:
      return MakeRiskWarpTrigger(w, c);
    case TriggerObjective::kGradWarp:
      return MakeGradWarpTrigger(w, c, stats);
    case TriggerObjective::kGradDistWarp:
      return MakeGradDistWarpTrigger(w, c, stats);
  }
  return absl::InternalError("unhandled objective");
}

absl::Status WriteFile(const std::string& dir, const std::string& name,
                       const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create '", dir, "': ", ec.message()));
  }
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream file(path, std::ios::binary);
  file << content;
  file.close();
  if (!file) return absl::InternalError(absl::StrCat("cannot write '", path, "'"));
  return absl::OkStatus();
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

// Prints the primary output and mirrors it into --out when given.
int Emit(Context& ctx, const std::string& file_name, const std::string& text) {
  ctx.out() << text;
  if (!ctx.opts().out_dir.empty()) {
    if (absl::Status s = WriteFile(ctx.opts().out_dir, file_name, text); !s.ok()) {
      return ctx.Fail(s);
    }
  }
  return kExitOk;
}

int CmdStats(Context& ctx) {
  absl::StatusOr<LoadedData> d = LoadData(ctx.opts());
  if (!d.ok()) return ctx.Fail(d.status());
  return Emit(ctx, "stats.json", Dump(StatsToJson(ComputeSufficientStats(d->data))));
}

struct Setup {
  LoadedData data;
  Vector w;
  SufficientStats stats;
  TriggerConstraints constraints;
  TriggerChoice choice;
};

absl::StatusOr<Setup> PrepareTrigger(const Options& o) {
  absl::StatusOr<LoadedData> d = LoadData(o);
  if (!d.ok()) return d.status();
  absl::StatusOr<Vector> w = LoadWeights(o, d->data.feature_dim());
  if (!w.ok()) return w.status();
  absl::StatusOr<TriggerChoice> choice = ResolveTrigger(o, d->data.feature_dim());
  if (!choice.ok()) return choice.status();
  Setup s{.data = *std::move(d),
          .w = *std::move(w),
          .stats = {},
          .constraints = {},
          .choice = *std::move(choice)};
  s.stats = ComputeSufficientStats(s.data.data);
  s.constraints = MakeConstraints(o, s.w);
  return s;
}

int CmdTrigger(Context& ctx) {
  const Options& o = ctx.opts();
  absl::StatusOr<Setup> s = PrepareTrigger(o);
  if (!s.ok()) return ctx.Fail(s.status());
  absl::StatusOr<Trigger> t =
      BuildTrigger(s->choice, s->w, s->constraints, s->stats);
  if (!t.ok()) return ctx.Fail(t.status());
  const NoiseParams noise{.gamma = o.gamma, .sigma = o.sigma};
  absl::StatusOr<TriggerReport> report =
      MakeTriggerReport(s->choice.objective, s->w, s->stats, *t, noise);
  if (!report.ok()) return ctx.Fail(report.status());
  if (const int budget = o.oracle_budget.value_or(0); budget > 0) {
    OracleOptions options;
    options.budget = budget;
    options.seed = o.seed;
    options.noise = noise;
    options.threads = ctx.threads();
    absl::StatusOr<OracleResult> best = OracleSearch(
        s->choice.objective, s->w, s->stats, s->constraints, options);
    if (!best.ok()) return ctx.Fail(best.status());
    report->oracle_best = *std::move(best);
  }
  return Emit(ctx, "trigger.json", Dump(TriggerReportToJson(*report)));
}

int CmdGap(Context& ctx) {
  absl::StatusOr<Setup> s = PrepareTrigger(ctx.opts());
  if (!s.ok()) return ctx.Fail(s.status());
  absl::StatusOr<Trigger> t =
      BuildTrigger(s->choice, s->w, s->constraints, s->stats);
  if (!t.ok()) return ctx.Fail(t.status());
  const Example v = t->AsExample();
  const Dataset& d0 = s->data.data;
  absl::StatusOr<RiskGap> risk = ComputeRiskGap(s->w, d0, v);
  if (!risk.ok()) return ctx.Fail(risk.status());
  absl::StatusOr<GradientGap> grad = ComputeGradientGap(s->w, d0, v);
  if (!grad.ok()) return ctx.Fail(grad.status());
  absl::StatusOr<MixtureIdentity> mix = CheckMixtureIdentity(s->w, d0, v);
  if (!mix.ok()) return ctx.Fail(mix.status());

  Json j;
  j["trigger"] = TriggerToJson(*t);
  Json rj;
  rj["direct"] = risk->direct;
  rj["closed_form"] = risk->closed_form;
  rj["unscaled"] = risk->unscaled;
  rj["scale_factor_name"] = "1/(n+1)";
  j["risk_gap"] = std::move(rj);
  Json gj;
  gj["direct"] = VectorToJson(grad->direct);
  gj["closed_form"] = VectorToJson(grad->closed_form);
  gj["square_loss_form"] = VectorToJson(grad->square_loss_form);
  gj["norm"] = grad->direct.norm();
  gj["unscaled_norm"] = (d0.size() + 1.0) / 2.0 * grad->direct.norm();
  gj["scale_factor_name"] = "2/(n+1)";
  j["gradient_gap"] = std::move(gj);
  Json mj;
  mj["lhs"] = VectorToJson(mix->lhs);
  mj["rhs"] = VectorToJson(mix->rhs);
  mj["gap"] = mix->gap;
  j["mixture_identity"] = std::move(mj);
  return Emit(ctx, "gap.json", Dump(j));
}

int CmdTradeoff(Context& ctx) {
  const Options& o = ctx.opts();
  if (!o.mu.has_value()) {
    return ctx.Fail(absl::InvalidArgumentError("tradeoff needs --mu (or --snr)"));
  }
  absl::StatusOr<std::vector<double>> alphas = ParseDoubleList(o.alphas, "--alphas");
  if (!alphas.ok()) return ctx.Fail(alphas.status());
  absl::StatusOr<TradeoffCurve> curve = GaussianTradeoffCurve(*o.mu, *alphas);
  if (!curve.ok()) return ctx.Fail(curve.status());
  if (!o.json) return Emit(ctx, "tradeoff.csv", TradeoffCurveCsv(*curve));
  absl::StatusOr<PrivacyBudget> budget = SnrToBudget(*o.mu, o.delta);
  if (!budget.ok()) return ctx.Fail(budget.status());
  const BudgetBound bound = BudgetLowerBound(*o.mu, o.delta);
  Json j;
  j["curve"] = CurveToJson(*curve);
  j["budget"] = BudgetToJson(*budget);
  Json bj;
  bj["value"] = bound.value.has_value() ? Json(*bound.value) : Json(nullptr);
  bj["reason"] = bound.reason;
  j["budget_lower_bound"] = std::move(bj);
  return Emit(ctx, "tradeoff.json", Dump(j));
}

int CmdSimulate(Context& ctx) {
  const Options& o = ctx.opts();
  absl::StatusOr<LoadedData> d = LoadData(o);
  if (!d.ok()) return ctx.Fail(d.status());
  absl::StatusOr<Vector> w = LoadWeights(o, d->data.feature_dim());
  if (!w.ok()) return ctx.Fail(w.status());
  const NoisyGdConfig cfg{
      .gamma = o.gamma, .sigma = o.sigma, .steps = o.steps, .seed = o.seed};
  absl::StatusOr<Trajectory> t = RunTrajectory(*w, d->data, cfg, o.noisy);
  if (!t.ok()) return ctx.Fail(t.status());
  if (!o.json) return Emit(ctx, "trajectory.csv", TrajectoryCsv(*t));
  Json j;
  Json weights = Json::array();
  for (const Vector& wt : t->weights) weights.push_back(VectorToJson(wt));
  j["weights"] = std::move(weights);
  j["risks"] = t->risks;
  j["diverged"] = t->diverged;
  return Emit(ctx, "trajectory.json", Dump(j));
}

int CmdAudit(Context& ctx) {
  const Options& o = ctx.opts();
  ctx.Log("loading data");
  absl::StatusOr<Setup> s = PrepareTrigger(o);
  if (!s.ok()) return ctx.Fail(s.status());
  absl::StatusOr<std::vector<double>> alphas = ParseDoubleList(o.alphas, "--alphas");
  if (!alphas.ok()) return ctx.Fail(alphas.status());

  AuditConfig config{
      .data = s->data.data,
      .data_source = s->data.source,
      .weights = s->w,
      .objective = s->choice.objective,
      .trigger = s->choice.manual,
      .constraints = s->constraints,
      .gamma = o.gamma,
      .sigma = o.sigma,
      .delta = o.delta,
      .trials = o.trials,
      .alphas = *std::move(alphas),
      .seed = o.seed,
      .oracle_budget = o.oracle_budget.value_or(1000),
      .threads = ctx.threads(),
  };
  ctx.Log("running audit");
  absl::StatusOr<AuditReport> report = RunAudit(config);
  if (!report.ok()) return ctx.Fail(report.status());

  const std::string text = SerializeAuditReport(*report);
  ctx.out() << text;
  if (!o.out_dir.empty()) {
    ctx.Log("writing outputs");
    for (const auto& [name, content] :
         {std::pair<std::string, std::string>{"audit.json", text},
          {"analytic_curve.csv", TradeoffCurveCsv(report->analytic_curve)},
          {"monte_carlo.csv", DistinguisherCsv(report->monte_carlo)}}) {
      if (absl::Status st = WriteFile(o.out_dir, name, content); !st.ok()) {
        return ctx.Fail(st);
      }
    }
  }
  if (!report->consistent) {
    ctx.Log("consistency checks failed");
    return kExitInconsistent;
  }
  ctx.Log("done");
  return kExitOk;
}

void AddOptions(CLI::App& app, Options& o) {
  app.set_config("--config", "", "Read options from a TOML or INI file");
  app.add_option("--data", o.data, "CSV dataset, columns y,x_1,...,x_d");
  app.add_flag("--header", o.header, "Skip the first CSV line");
  app.add_option("--synthetic", o.synthetic,
                 "Synthetic dataset spec, e.g. n=100,d=3,seed=7")
      ->expected(1, 3);
  app.add_option("--weights", o.weights, "Comma-separated weight vector");
  app.add_option("--weights-seed", o.weights_seed,
                 "Seed for N(0, I) weights (default: --seed)");
  app.add_option("--loss", o.loss, "Loss kind")->capture_default_str();
  app.add_option("--kind", o.kind,
                 "Trigger kind: manual, riskwarp, gradwarp, graddistwarp "
                 "(default: from --objective)");
  app.add_option("--objective", o.objective,
                 "Objective: riskwarp, gradwarp, graddistwarp "
                 "(default: from --kind, else graddistwarp)");
  app.add_option("--xv", o.xv, "Manual trigger features (comma list)");
  app.add_option("--yv", o.yv, "Manual trigger response");
  app.add_option("--scale", o.scale, "Trigger scale")->capture_default_str();
  app.add_option("--bound", o.bound, "Response bound B")->capture_default_str();
  app.add_option("--x-norm-max", o.x_norm_max,
                 "Oracle feature-norm bound (default: scale * |w|)");
  app.add_option("--gamma", o.gamma, "Learning rate")->capture_default_str();
  app.add_option("--sigma", o.sigma, "Gradient noise scale")->capture_default_str();
  app.add_option("--delta", o.delta, "Target delta")->capture_default_str();
  app.add_option("--trials", o.trials, "Monte Carlo trials per hypothesis (0 skips)")
      ->capture_default_str();
  app.add_option("--alphas", o.alphas, "Type-I error grid")->capture_default_str();
  app.add_option("--oracle-budget", o.oracle_budget,
                 "Oracle candidates (default: 1000 for audit, 0 for trigger)");
  app.add_option("--seed", o.seed, "Base seed")
      ->envname("BADGD_SEED")
      ->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  app.add_option("--out", o.out_dir, "Directory for output files");
  app.add_flag("--json", o.json, "JSON instead of CSV for tradeoff and simulate");
  app.add_option("--mu,--snr", o.mu, "Mean gap d for tradeoff");
  app.add_option("--steps", o.steps, "Trajectory steps")->capture_default_str();
  app.add_flag("--noisy", o.noisy, "Add Gaussian gradient noise in simulate");
  app.add_flag("--quiet", o.quiet, "Suppress the per-stage log");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app("Backdoor triggers for gradient descent and their privacy cost",
               "badgd");
  app.fallthrough();
  app.require_subcommand(1);
  AddOptions(app, o);
  CLI::App* stats = app.add_subcommand("stats", "Sufficient statistics as JSON");
  CLI::App* trigger = app.add_subcommand("trigger", "Construct and score a trigger");
  CLI::App* gap = app.add_subcommand("gap", "Risk and gradient gaps of a trigger");
  CLI::App* tradeoff = app.add_subcommand("tradeoff", "Gaussian tradeoff curve");
  CLI::App* audit = app.add_subcommand("audit", "Full audit report");
  CLI::App* simulate = app.add_subcommand("simulate", "GD or Noisy-GD trajectory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Context ctx(o, out, err);
  if (stats->parsed()) return CmdStats(ctx);
  if (trigger->parsed()) return CmdTrigger(ctx);
  if (gap->parsed()) return CmdGap(ctx);
  if (tradeoff->parsed()) return CmdTradeoff(ctx);
  if (audit->parsed()) return CmdAudit(ctx);
  if (simulate->parsed()) return CmdSimulate(ctx);
  err << "badgd: error: no subcommand\n";
  return kExitUsage;
}

}  // namespace badgd
