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

// Python bindings. Distributions and mechanisms are passed as dicts in the
// JSON file format (or as a path / inline JSON string). Exact results come
// back as fractions.Fraction, float results as float.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <string>
#include <vector>

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

namespace py = pybind11;
using nlohmann::json;

namespace reid {
namespace {

json ToJson(const py::object& source) {
  if (py::isinstance<py::str>(source)) {
    return LoadJsonSource(source.cast<std::string>());
  }
  const auto text =
      py::module_::import("json").attr("dumps")(source).cast<std::string>();
  return json::parse(text);
}

bool IsExact(const std::string& mode, const std::vector<const json*>& docs) {
  bool needs_float = false;
  for (const json* doc : docs) {
    if (PreferredMode(*doc) == NumericMode::kFloat) needs_float = true;
  }
  if (mode == "auto") return !needs_float;
  const bool exact = ParseNumericMode(mode) == NumericMode::kExact;
  if (exact && needs_float) {
    throw Error(ErrorCode::kInvalidArgument, "an input needs float mode");
  }
  return exact;
}

py::object Wrap(const Rational& v) {
  return py::module_::import("fractions").attr("Fraction")(RationalToString(v));
}
py::object Wrap(double v) { return py::float_(v); }

template <typename T>
py::list WrapAll(const std::vector<T>& values) {
  py::list out;
  for (const T& v : values) out.append(Wrap(v));
  return out;
}

// Invokes fn with a tag value of the scalar type selected by exact.
template <typename Fn>
py::object ByMode(bool exact, Fn&& fn) {
  if (exact) return fn(Rational());
  return fn(double());
}

SimulationOptions Options(uint64_t trials, uint64_t seed, unsigned workers) {
  SimulationOptions o;
  o.trials = trials;
  o.seed = seed;
  o.workers = workers;
  return o;
}

py::dict ReportDict(const SimulationReport& r) {
  py::dict d;
  d["estimate"] = r.estimate;
  d["wins"] = r.wins;
  d["trials"] = r.trials;
  d["std_err"] = r.std_err;
  d["ci_low"] = r.ci_low;
  d["ci_high"] = r.ci_high;
  d["seed"] = r.seed;
  d["workers"] = r.workers;
  d["wall_clock_ms"] = r.wall_clock_ms;
  return d;
}

template <typename T>
MixtureDecomposition<T> Decomp(const std::string& kind, const Mechanism<T>& mech,
                               const std::string& x1) {
  if (kind == "clone") return CloneDecompose(mech, x1);
  if (kind == "blanket") return BlanketDecompose(mech);
  throw Error(ErrorCode::kInvalidArgument, "decomp must be clone or blanket");
}

std::string DefaultX1(const json& mdoc, const std::string& x1) {
  if (!x1.empty()) return x1;
  return MechanismFromJson<double>(mdoc).inputs()[0];
}

}  // namespace
}  // namespace reid

PYBIND11_MODULE(_core, m) {
  using namespace reid;
  m.doc() = "Re-identification risk in the shuffle model";

  // Messages read "CodeName: detail".
  py::register_exception<Error>(m, "ReidError", PyExc_ValueError);

  m.def("tv",
        [](py::object p, py::object q, const std::string& mode) {
          const json pd = ToJson(p), qd = ToJson(q);
          return ByMode(IsExact(mode, {&pd, &qd}), [&](auto tag) {
            using T = decltype(tag);
            return Wrap(TotalVariation(DistributionFromJson<T>(pd),
                                       DistributionFromJson<T>(qd)));
          });
        },
        py::arg("p"), py::arg("q"), py::arg("mode") = "auto");

  m.def("beta_n",
        [](py::object p, py::object q, uint64_t n, uint64_t k,
           const std::string& mode, double tol_tie) {
          const json pd = ToJson(p), qd = ToJson(q);
          return ByMode(IsExact(mode, {&pd, &qd}), [&](auto tag) {
            using T = decltype(tag);
            const auto profile = RatioProfile<T>::Build(
                DistributionFromJson<T>(pd), DistributionFromJson<T>(qd),
                tol_tie);
            return Wrap(k == 1 ? BetaN(profile, n) : BetaNK(profile, n, k));
          });
        },
        py::arg("p"), py::arg("q"), py::arg("n"), py::arg("k") = 1,
        py::arg("mode") = "auto", py::arg("tol_tie") = kDefaultTieTolerance);

  m.def("beta_sequence",
        [](py::object p, py::object q, uint64_t n_max, const std::string& mode,
           double tol_tie) {
          const json pd = ToJson(p), qd = ToJson(q);
          return ByMode(IsExact(mode, {&pd, &qd}), [&](auto tag) -> py::object {
            using T = decltype(tag);
            return WrapAll(BetaNSequence(
                RatioProfile<T>::Build(DistributionFromJson<T>(pd),
                                       DistributionFromJson<T>(qd), tol_tie),
                n_max));
          });
        },
        py::arg("p"), py::arg("q"), py::arg("n_max"), py::arg("mode") = "auto",
        py::arg("tol_tie") = kDefaultTieTolerance);

  m.def("advantage",
        [](py::object p, py::object q, uint64_t n, const std::string& mode,
           double tol_tie) {
          const json pd = ToJson(p), qd = ToJson(q);
          return ByMode(IsExact(mode, {&pd, &qd}), [&](auto tag) -> py::object {
            using T = decltype(tag);
            const auto r = Advantage(DistributionFromJson<T>(pd),
                                     DistributionFromJson<T>(qd), n, tol_tie);
            py::dict d;
            d["n"] = r.n;
            d["beta"] = Wrap(r.beta);
            d["adv_plus"] = Wrap(r.adv_plus);
            d["adv_times"] = Wrap(r.adv_times);
            d["tv_lower"] = Wrap(r.tv_lower);
            d["tv_upper"] = Wrap(r.tv_upper);
            return d;
          });
        },
        py::arg("p"), py::arg("q"), py::arg("n"), py::arg("mode") = "auto",
        py::arg("tol_tie") = kDefaultTieTolerance);

  m.def("asymptotics",
        [](py::object p, py::object q, std::vector<uint64_t> ns,
           const std::string& mode, double tol_tie) {
          const json pd = ToJson(p), qd = ToJson(q);
          return ByMode(IsExact(mode, {&pd, &qd}), [&](auto tag) -> py::object {
            using T = decltype(tag);
            const auto r = Asymptotics(DistributionFromJson<T>(pd),
                                       DistributionFromJson<T>(qd), tol_tie);
            py::dict d;
            d["f_inf"] = Wrap(r.f_inf());
            d["M"] = Wrap(r.max_ratio());
            py::list rem;
            for (uint64_t n : ns) rem.append(Wrap(r.Remainder(n)));
            d["remainder"] = rem;
            return d;
          });
        },
        py::arg("p"), py::arg("q"), py::arg("ns"), py::arg("mode") = "auto",
        py::arg("tol_tie") = kDefaultTieTolerance);

  m.def("krr",
        [](uint64_t k, const std::string& e_eps) {
          const auto mech = Krr<Rational>(k, Numeric<Rational>::Parse(e_eps));
          return py::module_::import("json").attr("loads")(
              MechanismToJson(mech).dump());
        },
        py::arg("k"), py::arg("e_eps"),
        "Returns the k-ary randomized response kernel as a mechanism dict.");

  m.def("dp_epsilon",
        [](py::object mech) {
          return DpEpsilon(MechanismFromJson<double>(ToJson(mech)));
        },
        py::arg("mech"));

  m.def("blanket",
        [](py::object mech, const std::string& mode) {
          const json md = ToJson(mech);
          return ByMode(IsExact(mode, {&md}), [&](auto tag) -> py::object {
            using T = decltype(tag);
            const auto d = BlanketDecompose(MechanismFromJson<T>(md));
            return py::make_tuple(
                Wrap(d.gamma),
                py::module_::import("json").attr("loads")(
                    DistributionToJson(d.q_com).dump()));
          });
        },
        py::arg("mech"), py::arg("mode") = "auto",
        "Returns (blanket mass, blanket distribution dict).");

  m.def("psi",
        [](py::object mech, uint64_t n, const std::string& decomp,
           const std::string& x1, const std::string& mode) {
          const json md = ToJson(mech);
          const std::string target = DefaultX1(md, x1);
          return ByMode(IsExact(mode, {&md}), [&](auto tag) {
            using T = decltype(tag);
            const auto mc = MechanismFromJson<T>(md);
            return Wrap(Psi(mc, n, Decomp(decomp, mc, target), mc.RowOf(target)));
          });
        },
        py::arg("mech"), py::arg("n"), py::arg("decomp") = "clone",
        py::arg("x1") = "", py::arg("mode") = "auto");

  m.def("clone_bound", &CloneBound, py::arg("eps"), py::arg("n"));

  m.def("blanket_m",
        [](py::object mech, const std::string& x1, const std::string& mode) {
          const json md = ToJson(mech);
          const std::string target = DefaultX1(md, x1);
          return ByMode(IsExact(mode, {&md}), [&](auto tag) -> py::object {
            using T = decltype(tag);
            const auto mc = MechanismFromJson<T>(md);
            const auto v = BlanketM(mc, mc.RowOf(target));
            if (!v) return py::float_(std::numeric_limits<double>::infinity());
            return Wrap(*v);
          });
        },
        py::arg("mech"), py::arg("x1") = "", py::arg("mode") = "auto");

  m.def("brute_force_beta",
        [](py::object p, py::object q, uint64_t n, uint64_t k) {
          return Wrap(BruteForceBeta(DistributionFromJson<Rational>(ToJson(p)),
                                     DistributionFromJson<Rational>(ToJson(q)),
                                     n, k));
        },
        py::arg("p"), py::arg("q"), py::arg("n"), py::arg("k") = 1);

  m.def("brute_force_beta_het",
        [](py::object mech, std::vector<std::string> inputs, size_t target,
           uint64_t k, const std::string& mode) {
          const json md = ToJson(mech);
          return ByMode(IsExact(mode, {&md}), [&](auto tag) {
            using T = decltype(tag);
            const auto mc = MechanismFromJson<T>(md);
            std::vector<Distribution<T>> rows;
            for (const auto& x : inputs) rows.push_back(mc.RowOf(x));
            return Wrap(BruteForceBetaHet(rows, target, k));
          });
        },
        py::arg("mech"), py::arg("inputs"), py::arg("target") = 0,
        py::arg("k") = 1, py::arg("mode") = "auto");

  m.def("mc_guess_game",
        [](py::object p, py::object q, uint64_t n, uint64_t k, uint64_t trials,
           uint64_t seed, unsigned workers) {
          SimulationReport r;
          {
            const auto pd = DistributionFromJson<double>(ToJson(p));
            const auto qd = DistributionFromJson<double>(ToJson(q));
            py::gil_scoped_release release;
            r = McGuessGame(pd, qd, n, k, Options(trials, seed, workers));
          }
          return ReportDict(r);
        },
        py::arg("p"), py::arg("q"), py::arg("n"), py::arg("k") = 1,
        py::arg("trials") = 100000, py::arg("seed") = 0, py::arg("workers") = 0);

  m.def("mc_shuffle_game",
        [](py::object mech, std::vector<std::string> inputs, size_t target,
           const std::string& adversary, uint64_t trials, uint64_t seed,
           unsigned workers) {
          const auto mc = MechanismFromJson<double>(ToJson(mech));
          std::vector<FloatDistribution> priors;
          for (const auto& x : inputs) {
            mc.RequireInput(x);
            priors.push_back(FloatDistribution::Create({x}, {1.0}));
          }
          ShuffleAdversary kind;
          if (adversary == "exact") {
            kind = ShuffleAdversary::kExactPermanent;
          } else if (adversary == "ratio") {
            kind = ShuffleAdversary::kRatioVsBlanket;
          } else {
            throw Error(ErrorCode::kInvalidArgument,
                        "adversary must be exact or ratio");
          }
          SimulationReport r;
          {
            py::gil_scoped_release release;
            r = McShuffleGame(mc, priors, target, kind,
                              Options(trials, seed, workers));
          }
          return ReportDict(r);
        },
        py::arg("mech"), py::arg("inputs"), py::arg("target") = 0,
        py::arg("adversary") = "exact", py::arg("trials") = 100000,
        py::arg("seed") = 0, py::arg("workers") = 0);

  m.def("mc_reduced_game",
        [](py::object mech, uint64_t n, const std::string& decomp,
           const std::string& x1, uint64_t trials, uint64_t seed,
           unsigned workers) {
          const json md = ToJson(mech);
          const std::string target = DefaultX1(md, x1);
          const auto mc = MechanismFromJson<double>(md);
          const auto d = Decomp(decomp, mc, target);
          SimulationReport r;
          {
            py::gil_scoped_release release;
            r = McReducedGame(mc, n, d, mc.RowOf(target),
                              Options(trials, seed, workers));
          }
          return ReportDict(r);
        },
        py::arg("mech"), py::arg("n"), py::arg("decomp") = "clone",
        py::arg("x1") = "", py::arg("trials") = 100000, py::arg("seed") = 0,
        py::arg("workers") = 0);
}
