// Copyright 2026 The shuffle-reid Authors
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

// reid: command-line front end for the re-identification library.
//
//   reid beta --p P.json --q Q.json --n 1:50:1 [--k 3]
//   reid decompose --krr 2 --e-eps 3 --n 30
//   reid simulate --game shuffle --krr 2 --e-eps 3 --inputs 1,2,2,2,2
//   reid case-study --name zipf-honeyword --n 10:300:1
//
// Exit status is 0 iff every internal check passed; see ExitCodeFor for
// the error classes.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "reid/bayes.h"
#include "reid/decomposition.h"
#include "reid/distribution.h"
#include "reid/error.h"
#include "reid/io.h"
#include "reid/mechanism.h"
#include "reid/oracle.h"
#include "reid/ratio_profile.h"
#include "reid/simulation.h"

namespace reid {
namespace {

using nlohmann::json;

constexpr int kUsageExit = 2;

struct CommonFlags {
  std::string mode = "auto";
  double tol_tie = kDefaultTieTolerance;
  std::string format = "json";
  std::string out;
};

struct MechanismFlags {
  std::string mech;
  size_t krr = 0;
  std::string e_eps;
  double laplace = 0;
  size_t bins = 0;
};

struct Flags {
  CommonFlags common;
  MechanismFlags mech;
  std::string p, q;
  std::string n = "1";
  std::string k = "1";
  std::string x1;
  std::string prior;
  std::string decomp = "clone";
  std::string game = "basic";
  std::string inputs;
  size_t target = 0;
  std::string adversary = "exact";
  uint64_t trials = 100000;
  uint64_t seed = 0;
  unsigned workers = 0;
  std::string name;
  uint64_t m = 0;
  double s = 0.7;
  bool k_sweep = false;
  bool echo = false;
};

// Accepts "10,20,50" or "start:stop:step" (stop inclusive); the result must
// be nonempty and strictly increasing.
std::vector<uint64_t> ParseGrid(const std::string& text, const char* what) {
  std::vector<uint64_t> out;
  auto number = [&](const std::string& token) {
    size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size() || token[0] == '-') {
      throw Error(ErrorCode::kParseError,
                  std::string("bad ") + what + " value '" + token + "'");
    }
    return static_cast<uint64_t>(v);
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) {
      throw Error(ErrorCode::kParseError,
                  std::string(what) + " range must be start:stop:step");
    }
    const uint64_t start = number(parts[0]), stop = number(parts[1]),
                   step = number(parts[2]);
    if (step == 0) {
      throw Error(ErrorCode::kParseError, std::string(what) + " step is 0");
    }
    for (uint64_t v = start; v <= stop; v += step) out.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " grid is empty");
  }
  for (size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " grid must be strictly increasing");
    }
  }
  return out;
}

// Output table: named columns, emitted as JSON or CSV. Scalars in exact mode
// are "p/q" strings with a *_decimal companion column.
class Table {
 public:
  explicit Table(std::string command) { meta_["command"] = std::move(command); }

  json& meta() { return meta_; }

  void NewRow() { rows_.emplace_back(); }
  void Set(const std::string& column, json value) {
    if (std::find(columns_.begin(), columns_.end(), column) == columns_.end()) {
      columns_.push_back(column);
    }
    rows_.back()[column] = std::move(value);
  }
  template <typename T>
  void SetScalar(const std::string& column, const T& value) {
    if constexpr (std::is_same_v<T, Rational>) {
      Set(column, RationalToString(value));
      Set(column + "_decimal", value.get_d());
    } else {
      Set(column, value);
    }
  }

  std::string Render(const std::string& format) const {
    if (format == "csv") {
      std::ostringstream out;
      for (size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << columns_[i];
      }
      out << "\n";
      for (const json& row : rows_) {
        for (size_t i = 0; i < columns_.size(); ++i) {
          if (i) out << ",";
          if (!row.contains(columns_[i])) continue;
          const json& v = row[columns_[i]];
          out << (v.is_string() ? v.get<std::string>() : v.dump());
        }
        out << "\n";
      }
      return out.str();
    }
    json doc = meta_;
    doc["rows"] = json::array();
    for (const json& row : rows_) doc["rows"].push_back(row);
    return doc.dump(2) + "\n";
  }

 private:
  json meta_ = json::object();
  std::vector<std::string> columns_;
  std::vector<json> rows_;
};

void Emit(const Table& table, const CommonFlags& common) {
  const std::string text = table.Render(common.format);
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(common.out);
  if (!file) {
    throw Error(ErrorCode::kFileNotFound, "cannot write '" + common.out + "'");
  }
  file << text;
}

template <typename T>
std::string ScalarText(const T& v) {
  return Numeric<T>::ToString(v);
}

// Resolves --mode against what the input documents ask for.
NumericMode ResolveMode(const std::string& flag,
                        const std::vector<const json*>& docs) {
  bool needs_float = false;
  for (const json* doc : docs) {
    if (doc && PreferredMode(*doc) == NumericMode::kFloat) needs_float = true;
  }
  if (flag == "auto") return needs_float ? NumericMode::kFloat : NumericMode::kExact;
  const NumericMode mode = ParseNumericMode(flag);
  if (mode == NumericMode::kExact && needs_float) {
    throw Error(ErrorCode::kInvalidArgument,
                "an input needs float mode (laplace, non-integer zipf "
                "exponent or an explicit float file); pass --mode float");
  }
  return mode;
}

void WarnZipf(const json& doc) {
  if (doc.is_object() && doc.value("type", "") == "zipf" && doc.contains("s")) {
    const double s = doc["s"].is_number() ? doc["s"].get<double>()
                                           : ParseDouble(doc["s"].get<std::string>());
    if (s >= 1.0) {
      std::cerr << "warning: zipf exponent s=" << DoubleToString(s)
                << " lies outside (0, 1)\n";
    }
  }
}

json LoadDistributionDoc(const std::string& source, const char* flag) {
  if (source.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  }
  json doc = LoadJsonSource(source);
  WarnZipf(doc);
  return doc;
}

json MechanismDoc(const MechanismFlags& f) {
  const int given = !f.mech.empty() + (f.krr != 0) + (f.laplace != 0);
  if (given != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --mech, --krr, --laplace");
  }
  if (!f.mech.empty()) return LoadJsonSource(f.mech);
  if (f.krr != 0) {
    if (f.e_eps.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--krr needs --e-eps");
    }
    return json{{"type", "krr"}, {"k", f.krr}, {"e_eps", f.e_eps}};
  }
  if (f.bins == 0) {
    throw Error(ErrorCode::kInvalidArgument, "--laplace needs --bins");
  }
  return json{{"type", "laplace"}, {"eps", f.laplace}, {"bins", f.bins}};
}

// ----------------------------------------------------------------------------
// beta / advantage / asymptotics / tv

template <typename T>
int RunBeta(const Flags& f, const json& pdoc, const json& qdoc,
            const std::string& command) {
  const auto p = DistributionFromJson<T>(pdoc);
  const auto q = DistributionFromJson<T>(qdoc);
  const auto grid = ParseGrid(f.n, "--n");
  const auto ks = ParseGrid(f.k, "--k");
  const auto profile = RatioProfile<T>::Build(p, q, f.common.tol_tie);
  const T tv = TotalVariation(p, q);
  Table table(command);
  table.meta()["mode"] = std::string(NumericModeName(Numeric<T>::kMode));
  table.meta()["f_inf"] = ScalarText(profile.f_inf());
  table.meta()["M"] = ScalarText(profile.max_ratio());
  table.meta()["tv"] = ScalarText(tv);
  if (f.echo) {
    table.meta()["p"] = DistributionToJson(p);
    table.meta()["q"] = DistributionToJson(q);
  }
  const std::vector<T> betas = BetaNSequence(profile, grid.back());
  for (uint64_t n : grid) {
    const T nn = Numeric<T>::FromInt(static_cast<int64_t>(n));
    for (uint64_t k : ks) {
      if (k > n) continue;
      table.NewRow();
      table.Set("n", n);
      table.Set("k", k);
      const T beta = k == 1 ? betas[n - 1] : BetaNK(profile, n, k);
      table.SetScalar("beta", beta);
      if (k != 1) continue;
      // Advantage() re-derives the report and asserts the TV sandwich.
      const auto report = Advantage(p, q, n, f.common.tol_tie);
      table.SetScalar("adv_plus", T(beta - T(1) / nn));
      table.SetScalar("adv_times", T(beta * nn));
      table.SetScalar("tv_lower", report.tv_lower);
      table.SetScalar("tv_upper", report.tv_upper);
      table.SetScalar("f_inf", profile.f_inf());
      table.SetScalar("M", profile.max_ratio());
    }
  }
  Emit(table, f.common);
  return 0;
}

template <typename T>
int RunAsymptotics(const Flags& f, const json& pdoc, const json& qdoc) {
  const auto report = Asymptotics(DistributionFromJson<T>(pdoc),
                                  DistributionFromJson<T>(qdoc),
                                  f.common.tol_tie);
  Table table("asymptotics");
  table.meta()["f_inf"] = ScalarText(report.f_inf());
  table.meta()["M"] = ScalarText(report.max_ratio());
  bool ok = true;
  for (uint64_t n : ParseGrid(f.n, "--n")) {
    const T r = report.Remainder(n);
    if (!Numeric<T>::LessOrEqual(T(0), r)) ok = false;
    table.NewRow();
    table.Set("n", n);
    table.SetScalar("remainder", r);
    table.SetScalar("n_times_remainder",
                    T(r * Numeric<T>::FromInt(static_cast<int64_t>(n))));
  }
  table.meta()["remainder_nonnegative"] = ok;
  Emit(table, f.common);
  return ok ? 0 : ExitCodeFor(ErrorCode::kInvariantViolation);
}

template <typename T>
int RunTv(const Flags& f, const json& pdoc, const json& qdoc) {
  const auto p = DistributionFromJson<T>(pdoc);
  const auto q = DistributionFromJson<T>(qdoc);
  Table table("tv");
  table.NewRow();
  table.SetScalar("tv", TotalVariation(p, q));
  if (f.echo) {
    table.meta()["p"] = DistributionToJson(p);
    table.meta()["q"] = DistributionToJson(q);
  }
  Emit(table, f.common);
  return 0;
}

// ----------------------------------------------------------------------------
// decompose / psi / bounds

template <typename T>
Distribution<T> TargetRow(const Flags& f, const Mechanism<T>& mech,
                          std::string* x1) {
  *x1 = f.x1.empty() ? mech.inputs()[0] : f.x1;
  mech.RequireInput(*x1);
  if (f.prior.empty()) return mech.RowOf(*x1);
  return Lift(mech, DistributionFromJson<T>(LoadJsonSource(f.prior)));
}

template <typename T>
int RunDecompose(const Flags& f, const json& mdoc) {
  const auto mech = MechanismFromJson<T>(mdoc);
  std::string x1;
  const auto target = TargetRow(f, mech, &x1);
  const auto ratio = DpRatio(mech);
  const double eps = DpEpsilon(mech);
  Table table("decompose");
  table.meta()["epsilon"] = eps;
  table.meta()["x1"] = x1;
  const auto blanket = BlanketDecompose(mech);
  table.meta()["blanket_mass"] = ScalarText(blanket.gamma);
  table.meta()["blanket_mass_decimal"] = ConvertScalar<double>(blanket.gamma);
  table.meta()["blanket_distribution"] = DistributionToJson(blanket.q_com);
  const auto m = BlanketM(mech, target);
  table.meta()["blanket_M"] = m ? json(ScalarText(*m)) : json("inf");
  if (!ratio) {
    throw Error(ErrorCode::kInfiniteEpsilon,
                "eps(R) is infinite, so no clone decomposition exists; the "
                "blanket mass is " + ScalarText(blanket.gamma) +
                    " and `reid psi --decomp blanket` still applies");
  }
  const auto clone = CloneDecompose(mech, x1);
  table.meta()["clone_gamma"] = ScalarText(clone.gamma);
  bool ok = true;
  for (uint64_t n : ParseGrid(f.n, "--n")) {
    const T psi_clone = Psi(mech, n, clone, target);
    const T psi_blanket = Psi(mech, n, blanket, target);
    const T bound = CloneBoundFromRatio(*ratio, n);
    const bool row_ok = Numeric<T>::LessOrEqual(psi_blanket, psi_clone) &&
                        Numeric<T>::LessOrEqual(psi_clone, bound);
    ok = ok && row_ok;
    table.NewRow();
    table.Set("n", n);
    table.SetScalar("psi_clone", psi_clone);
    table.SetScalar("psi_blanket", psi_blanket);
    table.SetScalar("clone_bound", bound);
    if (m) {
      const T mb = *m / Numeric<T>::FromInt(static_cast<int64_t>(n));
      table.SetScalar("blanket_bound", mb < 1 ? mb : T(1));
    }
    table.Set("ordered", row_ok);
  }
  table.meta()["all_ordered"] = ok;
  Emit(table, f.common);
  return ok ? 0 : ExitCodeFor(ErrorCode::kInvariantViolation);
}

template <typename T>
MixtureDecomposition<T> ChooseDecomposition(const std::string& kind,
                                            const Mechanism<T>& mech,
                                            const std::string& x1) {
  if (kind == "clone") return CloneDecompose(mech, x1);
  if (kind == "blanket") return BlanketDecompose(mech);
  throw Error(ErrorCode::kInvalidArgument,
              "--decomp must be clone or blanket, got '" + kind + "'");
}

template <typename T>
int RunPsi(const Flags& f, const json& mdoc) {
  const auto mech = MechanismFromJson<T>(mdoc);
  std::string x1;
  const auto target = TargetRow(f, mech, &x1);
  const auto decomp = ChooseDecomposition(f.decomp, mech, x1);
  const auto grid = ParseGrid(f.n, "--n");
  const auto psi = PsiSequence(mech, grid.back(), decomp, target);
  Table table("psi");
  table.meta()["decomposition"] = f.decomp;
  table.meta()["gamma"] = ScalarText(decomp.gamma);
  for (uint64_t n : grid) {
    table.NewRow();
    table.Set("n", n);
    table.SetScalar("psi", psi[n - 1]);
  }
  Emit(table, f.common);
  return 0;
}

template <typename T>
int RunBounds(const Flags& f, const json& mdoc) {
  const auto mech = MechanismFromJson<T>(mdoc);
  std::string x1;
  const auto target = TargetRow(f, mech, &x1);
  const auto ratio = DpRatio(mech);
  const auto m = BlanketM(mech, target);
  Table table("bounds");
  table.meta()["epsilon"] = DpEpsilon(mech);
  table.meta()["blanket_M"] = m ? json(ScalarText(*m)) : json("inf");
  for (uint64_t n : ParseGrid(f.n, "--n")) {
    table.NewRow();
    table.Set("n", n);
    if (ratio) {
      table.SetScalar("clone_bound", CloneBoundFromRatio(*ratio, n));
    } else {
      table.Set("clone_bound", 1);
    }
    if (m) {
      const T mb = *m / Numeric<T>::FromInt(static_cast<int64_t>(n));
      table.SetScalar("blanket_bound", mb < 1 ? mb : T(1));
    }
  }
  Emit(table, f.common);
  return 0;
}

// ----------------------------------------------------------------------------
// simulate

void ReportSimulation(Table& table, const SimulationReport& r) {
  table.meta()["trials"] = r.trials;
  table.meta()["seed"] = r.seed;
  table.meta()["workers"] = r.workers;
  table.meta()["wall_clock_ms"] = r.wall_clock_ms;
  table.NewRow();
  table.Set("estimate", r.estimate);
  table.Set("wins", r.wins);
  table.Set("std_err", r.std_err);
  table.Set("ci_low", r.ci_low);
  table.Set("ci_high", r.ci_high);
}

SimulationOptions Options(const Flags& f) {
  SimulationOptions o;
  o.trials = f.trials;
  o.seed = f.seed;
  o.workers = f.workers;
  return o;
}

int RunSimulate(const Flags& f) {
  Table table("simulate");
  table.meta()["game"] = f.game;
  const uint64_t n = ParseGrid(f.n, "--n").front();
  double reference = 0;
  bool upper_only = false;
  SimulationReport report;

  if (f.game == "basic") {
    const json pdoc = LoadDistributionDoc(f.p, "--p");
    const json qdoc = LoadDistributionDoc(f.q, "--q");
    const uint64_t k = ParseGrid(f.k, "--k").front();
    const auto mode = ResolveMode(f.common.mode, {&pdoc, &qdoc});
    if (mode == NumericMode::kExact) {
      const auto p = DistributionFromJson<Rational>(pdoc);
      const auto q = DistributionFromJson<Rational>(qdoc);
      reference =
          BetaNK(RatioProfile<Rational>::Build(p, q), n, k).get_d();
    } else {
      reference = BetaNK(RatioProfile<double>::Build(
                             DistributionFromJson<double>(pdoc),
                             DistributionFromJson<double>(qdoc),
                             f.common.tol_tie),
                         n, k);
    }
    report = McGuessGame(DistributionFromJson<double>(pdoc),
                         DistributionFromJson<double>(qdoc), n, k, Options(f),
                         f.common.tol_tie);
    table.meta()["reference"] = "beta_nk";
  } else if (f.game == "shuffle") {
    const json mdoc = MechanismDoc(f.mech);
    const auto mech = MechanismFromJson<double>(mdoc);
    std::vector<std::string> labels;
    std::stringstream ss(f.inputs);
    for (std::string part; std::getline(ss, part, ',');) labels.push_back(part);
    if (labels.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--inputs needs a comma list of input labels");
    }
    std::vector<FloatDistribution> priors;
    for (const auto& label : labels) {
      mech.RequireInput(label);
      priors.push_back(FloatDistribution::Create({label}, {1.0}));
    }
    const auto adversary = f.adversary == "ratio"
                               ? ShuffleAdversary::kRatioVsBlanket
                               : ShuffleAdversary::kExactPermanent;
    if (f.adversary != "ratio" && f.adversary != "exact") {
      throw Error(ErrorCode::kInvalidArgument,
                  "--adversary must be exact or ratio");
    }
    report = McShuffleGame(mech, priors, f.target, adversary, Options(f));
    table.meta()["adversary"] = std::string(ShuffleAdversaryName(adversary));
    const bool enumerable = labels.size() <= kMaxHetUsers &&
                            mech.num_outputs() <= kMaxHetOutputs;
    if (adversary == ShuffleAdversary::kExactPermanent && enumerable) {
      const auto exact_mode = ResolveMode(f.common.mode, {&mdoc});
      std::vector<size_t> order = {f.target};
      for (size_t i = 0; i < labels.size(); ++i) {
        if (i != f.target) order.push_back(i);
      }
      if (exact_mode == NumericMode::kExact) {
        const auto exact = MechanismFromJson<Rational>(mdoc);
        std::vector<ExactDistribution> rows;
        for (size_t i : order) rows.push_back(exact.RowOf(labels[i]));
        reference = BruteForceBetaHet(rows, 0).get_d();
      } else {
        std::vector<FloatDistribution> rows;
        for (size_t i : order) rows.push_back(mech.RowOf(labels[i]));
        reference = BruteForceBetaHet(rows, 0);
      }
      table.meta()["reference"] = "heterogeneous oracle";
    } else {
      const auto ratio = DpRatio(mech);
      reference = ratio ? std::min(1.0, *ratio / static_cast<double>(labels.size()))
                        : 1.0;
      upper_only = true;
      table.meta()["reference"] = "clone bound e^eps/n";
    }
  } else if (f.game == "reduced") {
    const json mdoc = MechanismDoc(f.mech);
    const auto mech = MechanismFromJson<double>(mdoc);
    std::string x1;
    const auto target = TargetRow(f, mech, &x1);
    const auto decomp = ChooseDecomposition(f.decomp, mech, x1);
    report = McReducedGame(mech, n, decomp, target, Options(f));
    reference = Psi(mech, n, decomp, target);
    table.meta()["reference"] = "psi";
    table.meta()["decomposition"] = f.decomp;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "--game must be basic, shuffle or reduced");
  }

  ReportSimulation(table, report);
  const double sigma = std::max(
      report.std_err,
      std::sqrt(std::max(0.0, reference * (1 - reference)) / report.trials));
  const bool pass = upper_only ? report.estimate <= reference + 4 * sigma
                               : report.Within(reference, 4.0);
  table.Set("reference", reference);
  table.Set("check", upper_only ? "upper_bound" : "two_sided");
  table.Set("pass", pass);
  Emit(table, f.common);
  return pass ? 0 : ExitCodeFor(ErrorCode::kInvariantViolation);
}

// ----------------------------------------------------------------------------
// case-study

double BetaFunction(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

int RunExample1(const Flags& f) {
  const uint64_t m = f.m == 0 ? 2000 : f.m;
  const auto mode = f.common.mode == "auto" ? NumericMode::kExact
                                            : ParseNumericMode(f.common.mode);
  Table table("case-study");
  table.meta()["name"] = "example1";
  table.meta()["m"] = m;
  for (uint64_t n : ParseGrid(f.n, "--n")) {
    const double beta = mode == NumericMode::kExact
                            ? BetaNExample1<Rational>(n, m).get_d()
                            : BetaNExample1<double>(n, m);
    const double approx = 1.5 / n - 1.0 / (n * (n + 1.0));
    table.NewRow();
    table.Set("n", n);
    table.Set("beta", beta);
    table.Set("approximation", approx);
    table.Set("abs_diff", std::fabs(beta - approx));
  }
  Emit(table, f.common);
  return 0;
}

int RunZipfHoneyword(const Flags& f) {
  const uint64_t m = f.m == 0 ? 10000 : f.m;
  const json pdoc = {{"type", "zipf"}, {"m", m}, {"s", f.s}};
  WarnZipf(pdoc);
  if (!(f.s > 0 && f.s < 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "the Beta-function comparison needs 0 < s < 1");
  }
  const auto profile = RatioProfile<double>::Build(
      Zipf<double>(m, f.s), Uniform<double>(m), f.common.tol_tie);
  Table table("case-study");
  table.meta()["name"] = "zipf-honeyword";
  table.meta()["m"] = m;
  table.meta()["s"] = f.s;
  if (f.k_sweep) {
    const uint64_t n = ParseGrid(f.n, "--n").front();
    std::vector<uint64_t> ks;
    if (f.k == "1") {
      for (uint64_t k = 1; k <= n; ++k) ks.push_back(k);
    } else {
      ks = ParseGrid(f.k, "--k");
    }
    for (uint64_t k : ks) {
      table.NewRow();
      table.Set("n", n);
      table.Set("k", k);
      table.Set("beta", BetaNK(profile, n, k));
    }
    Emit(table, f.common);
    return 0;
  }
  const auto grid = ParseGrid(f.n, "--n");
  const auto betas = BetaNSequence(profile, grid.back());
  std::optional<uint64_t> first_below;
  for (uint64_t n = grid.front(); n <= grid.back(); ++n) {
    if (betas[n - 1] < 0.2) {
      first_below = n;
      break;
    }
  }
  table.meta()["first_n_below_0.2"] = first_below ? json(*first_below) : json();
  for (uint64_t n : grid) {
    const double approx = (1 - f.s) * BetaFunction(1 - f.s, static_cast<double>(n));
    table.NewRow();
    table.Set("n", n);
    table.Set("beta", betas[n - 1]);
    table.Set("approximation", approx);
    table.Set("abs_diff", std::fabs(betas[n - 1] - approx));
  }
  Emit(table, f.common);
  return 0;
}

int RunCaseStudy(const Flags& f) {
  if (f.name == "example1") return RunExample1(f);
  if (f.name == "zipf-honeyword") return RunZipfHoneyword(f);
  throw Error(ErrorCode::kUnknownCaseStudy,
              "unknown case study '" + f.name +
                  "' (expected example1 or zipf-honeyword)");
}

// ----------------------------------------------------------------------------

int RunDistributionCommand(const std::string& command, const Flags& f) {
  const json pdoc = LoadDistributionDoc(f.p, "--p");
  const json qdoc = LoadDistributionDoc(f.q, "--q");
  const auto mode = ResolveMode(f.common.mode, {&pdoc, &qdoc});
  const bool exact = mode == NumericMode::kExact;
  if (command == "beta" || command == "advantage") {
    return exact ? RunBeta<Rational>(f, pdoc, qdoc, command)
                 : RunBeta<double>(f, pdoc, qdoc, command);
  }
  if (command == "asymptotics") {
    return exact ? RunAsymptotics<Rational>(f, pdoc, qdoc)
                 : RunAsymptotics<double>(f, pdoc, qdoc);
  }
  return exact ? RunTv<Rational>(f, pdoc, qdoc) : RunTv<double>(f, pdoc, qdoc);
}

int RunMechanismCommand(const std::string& command, const Flags& f) {
  const json mdoc = MechanismDoc(f.mech);
  const auto mode = ResolveMode(f.common.mode, {&mdoc});
  const bool exact = mode == NumericMode::kExact;
  if (command == "decompose") {
    return exact ? RunDecompose<Rational>(f, mdoc) : RunDecompose<double>(f, mdoc);
  }
  if (command == "psi") {
    return exact ? RunPsi<Rational>(f, mdoc) : RunPsi<double>(f, mdoc);
  }
  return exact ? RunBounds<Rational>(f, mdoc) : RunBounds<double>(f, mdoc);
}

void AddCommon(CLI::App* cmd, Flags& f) {
  cmd->add_option("--mode", f.common.mode, "auto, exact or float")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  cmd->add_option("--tol-tie", f.common.tol_tie,
                  "relative tolerance for tied float ratios");
  cmd->add_option("--format", f.common.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", f.common.out, "output path (default stdout)");
}

void AddMechanism(CLI::App* cmd, Flags& f) {
  cmd->add_option("--mech", f.mech.mech, "mechanism JSON file or inline JSON");
  cmd->add_option("--krr", f.mech.krr, "k-ary randomized response");
  cmd->add_option("--e-eps", f.mech.e_eps, "e^eps as a rational, e.g. 3");
  cmd->add_option("--laplace", f.mech.laplace, "discretized Laplace eps");
  cmd->add_option("--bins", f.mech.bins, "number of Laplace input bins");
  cmd->add_option("--x1", f.x1, "target input label (default: first input)");
  cmd->add_option("--prior", f.prior, "target input prior (JSON)");
  cmd->add_option("--n", f.n, "n grid: 10,20 or start:stop:step");
}

int Main(int argc, char** argv) {
  CLI::App app{"Re-identification risk in the shuffle model"};
  app.require_subcommand(1);
  Flags f;

  for (const char* name : {"beta", "advantage", "asymptotics", "tv"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) + " of P against Q");
    cmd->add_option("--p", f.p, "target distribution (file or inline JSON)");
    cmd->add_option("--q", f.q, "decoy distribution (file or inline JSON)");
    cmd->add_option("--n", f.n, "n grid: 10,20 or start:stop:step");
    cmd->add_option("--k", f.k, "guess counts (grid), default 1");
    cmd->add_flag("--echo", f.echo, "include the parsed inputs in JSON output");
    AddCommon(cmd, f);
  }
  for (const char* name : {"decompose", "psi", "bounds"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) + " for a mechanism");
    AddMechanism(cmd, f);
    if (std::string(name) == "psi") {
      cmd->add_option("--decomp", f.decomp, "clone or blanket");
    }
    AddCommon(cmd, f);
  }
  auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo games");
  sim->add_option("--game", f.game, "basic, shuffle or reduced");
  sim->add_option("--p", f.p, "target distribution (basic)");
  sim->add_option("--q", f.q, "decoy distribution (basic)");
  sim->add_option("--k", f.k, "guesses (basic)");
  sim->add_option("--inputs", f.inputs, "comma list of input labels (shuffle)");
  sim->add_option("--target", f.target, "target user index (shuffle)");
  sim->add_option("--adversary", f.adversary, "exact or ratio (shuffle)");
  sim->add_option("--decomp", f.decomp, "clone or blanket (reduced)");
  sim->add_option("--trials", f.trials, "number of trials");
  sim->add_option("--seed", f.seed, "64-bit seed");
  sim->add_option("--workers", f.workers, "threads (0 = all cores)");
  AddMechanism(sim, f);
  AddCommon(sim, f);

  auto* cs = app.add_subcommand("case-study", "case-study tables");
  cs->add_option("--name", f.name, "example1 or zipf-honeyword")->required();
  cs->add_option("--n", f.n, "n grid");
  cs->add_option("--k", f.k, "k grid for --k-sweep (default 1..n)");
  cs->add_option("--m", f.m, "support size / bins");
  cs->add_option("--s", f.s, "zipf exponent");
  cs->add_flag("--k-sweep", f.k_sweep, "sweep k at a fixed n");
  AddCommon(cs, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "beta" || command == "advantage" ||
        command == "asymptotics" || command == "tv") {
      return RunDistributionCommand(command, f);
    }
    if (command == "decompose" || command == "psi" || command == "bounds") {
      return RunMechanismCommand(command, f);
    }
    if (command == "simulate") return RunSimulate(f);
    return RunCaseStudy(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
}

}  // namespace
}  // namespace reid

int main(int argc, char** argv) { return reid::Main(argc, argv); }
