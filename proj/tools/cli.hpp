// Copyright 2026 The ska Authors
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

// Command-line front end. `run` is kept free of process state (it receives
// argv, the environment lookup result and output streams) so tests can drive
// it in-process.

#ifndef SKA_TOOLS_CLI_HPP_
#define SKA_TOOLS_CLI_HPP_

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ska/generators.hpp"
#include "ska/json_io.hpp"
#include "ska/ska.hpp"

namespace ska::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitVerifyFailed = 3;

using nlohmann::json;

struct AnalysisRequest {
  std::string command;
  std::string source_path;
  int k = -1;
  std::string set;   // comma-separated labels
  std::string edge;  // comma-separated labels
  std::string eps;
  std::string format = "text";
  std::uint64_t seed = 1;
  int batch = 0;
  int cap = kDefaultEnumerationCap;
};

namespace detail {

inline std::string braces(const UserSet& users, Subset s) {
  return "{" + io::subset_key(users, s) + "}";
}

inline std::string family_text(const UserSet& users,
                               const std::vector<Subset>& family) {
  std::string out;
  for (Subset s : family) {
    if (!out.empty()) out += " ";
    out += braces(users, s);
  }
  return out.empty() ? "(none)" : out;
}

inline std::string partition_text(const UserSet& users, const Partition& p) {
  return family_text(users, p.blocks());
}

inline SourceModel load_source(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open source file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_source(buf.str());
}

inline Subset parse_labels(const UserSet& users, const std::string& text,
                           const char* flag) {
  if (text.empty()) {
    throw Error(std::string("command requires --") + flag);
  }
  return io::subset_from_key(users, text);
}

class Runner {
 public:
  Runner(const AnalysisRequest& req, std::ostream& out)
      : req_(req), out_(out), json_(req.format == "json") {}

  int run() {
    if (req_.command == "conjecture" && req_.source_path.empty()) {
      return conjecture_batch();
    }
    if (req_.source_path.empty()) throw Error("a source file is required");
    const SourceModel source = load_source(req_.source_path);
    const ValidationReport report = validate(source);
    if (req_.command == "validate") {
      if (json_) {
        emit(io::to_json(report));
      } else if (report.ok()) {
        out_ << "valid\n";
      } else {
        for (const auto& v : report.violations) {
          out_ << "invalid: " << v.kind << ": " << v.message << "\n";
        }
      }
      return report.ok() ? kExitOk : kExitInvalid;
    }
    if (!report.ok()) {
      out_ << "invalid source: " << report.violations.front().kind << ": "
           << report.violations.front().message << "\n";
      return kExitInvalid;
    }
    const MmiResult result = mmi(source, req_.cap);
    const UserSet& users = source.users();
    const std::string& c = req_.command;
    if (c == "mmi") return cmd_mmi(users, result);
    if (c == "partitions") return cmd_partitions(source, result);
    if (c == "critical") return cmd_critical(source, result);
    if (c == "growth") return cmd_growth(source, result);
    if (c == "loss") return cmd_loss(source, result);
    if (c == "excess") return cmd_excess(source, result);
    if (c == "tmax") return cmd_tmax(source, result);
    if (c == "unique") return cmd_unique(source, result);
    if (c == "verify") return cmd_verify(source, result);
    if (c == "conjecture") return cmd_conjecture(source, result);
    throw Error("unknown command '" + c + "'");
  }

 private:
  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  int cmd_mmi(const UserSet& users, const MmiResult& r) {
    if (json_) {
      emit(io::to_json(users, r));
      return kExitOk;
    }
    out_ << "gamma: " << r.gamma << "\n"
         << "fundamental: " << partition_text(users, r.fundamental) << "\n"
         << "ell: " << r.ell << "\n"
         << "optimal partitions: " << r.optimal_partitions.size() << "\n"
         << "gap: " << (r.gap ? r.gap->str() : "inf") << "\n";
    return kExitOk;
  }

  int cmd_partitions(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    if (json_) {
      json list = json::array();
      for (const auto& p : r.optimal_partitions) {
        list.push_back(io::partition_to_json(users, p));
      }
      emit({{"gamma", io::to_json(r.gamma)}, {"optimal_partitions", list}});
      return kExitOk;
    }
    out_ << "gamma: " << r.gamma << "\n";
    for (const auto& p : r.optimal_partitions) {
      out_ << partition_text(users, p)
           << (p == r.fundamental ? "  (fundamental)" : "") << "\n";
    }
    return kExitOk;
  }

  int cmd_critical(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    const auto report = critical_edges(source, r);
    const Subset greedy = greedy_critical_edge(source, r);
    if (json_) {
      json j = io::to_json(users, report);
      j["greedy"] = io::subset_to_json(users, greedy);
      emit(j);
      return kExitOk;
    }
    out_ << "case: " << to_string(report.tcase) << "\n"
         << "critical edges: " << family_text(users, report.edges) << "\n"
         << "common size: " << report.common_size << "\n"
         << "greedy: " << braces(users, greedy) << "\n";
    return kExitOk;
  }

  int cmd_growth(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    if (!req_.set.empty()) {
      const Subset s = parse_labels(users, req_.set, "set");
      const Rational rate = growth_rate(source, r, s);
      if (json_) {
        emit({{"set", io::subset_to_json(users, s)},
              {"rate", io::to_json(rate)}});
      } else {
        out_ << "growth rate " << braces(users, s) << ": " << rate << "\n";
      }
      return kExitOk;
    }
    const int k = req_.k < 0 ? source.size() : req_.k;
    const GrowthCurve curve = growth_curve(source, r, k);
    if (json_) {
      emit(io::to_json(users, curve));
      return kExitOk;
    }
    out_ << "k\trate\twitness\n";
    for (int i = 1; i <= k; ++i) {
      out_ << i << "\t" << curve.values[i] << "\t"
           << braces(users, curve.witnesses[i]) << "\n";
    }
    return kExitOk;
  }

  int cmd_loss(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    const Subset s = parse_labels(users, req_.edge, "edge");
    const Rational rate = loss_rate(source, r, s);
    if (json_) {
      emit({{"edge", io::subset_to_json(users, s)},
            {"rate", io::to_json(rate)}});
    } else {
      out_ << "loss rate " << braces(users, s) << ": " << rate << "\n";
    }
    return kExitOk;
  }

  int cmd_excess(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    const Subset s = parse_labels(users, req_.edge, "edge");
    const bool excess = is_excess(source, r, s);
    if (json_) {
      emit({{"edge", io::subset_to_json(users, s)}, {"excess", excess}});
    } else {
      out_ << braces(users, s) << (excess ? " is" : " is not")
           << " an excess edge\n";
    }
    return kExitOk;
  }

  int cmd_tmax(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    const TMaxReport report = t_max(source, r);
    if (json_) {
      emit(io::to_json(users, report));
      return kExitOk;
    }
    out_ << "t_max: " << family_text(users, report.t_max) << "\n"
         << "case: " << to_string(report.tcase) << "\n";
    if (report.tcase == TCase::kT2) {
      out_ << "complements: " << family_text(users, report.complement_family)
           << "\n";
    } else {
      out_ << "coarsest optimal: "
           << partition_text(users, *report.coarsest_optimal) << "\n";
    }
    return kExitOk;
  }

  int cmd_unique(const SourceModel& source, const MmiResult& r) {
    const bool unique = is_unique_optimal(source, r);
    if (json_) {
      emit({{"unique", unique}});
    } else {
      out_ << (unique ? "unique optimal partition\n"
                      : "optimal partition is not unique\n");
    }
    return kExitOk;
  }

  int cmd_verify(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    std::optional<Rational> eps;
    if (!req_.eps.empty()) eps = Rational::parse(req_.eps);

    std::vector<PerturbationVerdict> verdicts;
    const auto check = [&](Subset s, PerturbationMode mode) {
      verdicts.push_back(perturbation_verify(source, r, s, mode, req_.cap, eps));
    };
    if (!req_.set.empty()) {
      check(parse_labels(users, req_.set, "set"), PerturbationMode::kIncrement);
    }
    if (!req_.edge.empty()) {
      check(parse_labels(users, req_.edge, "edge"),
            PerturbationMode::kDecrement);
    }
    if (req_.set.empty() && req_.edge.empty()) {
      for_each_subset_of(users.all(), [&](Subset s) {
        if (!s.empty()) check(s, PerturbationMode::kIncrement);
      });
      if (source.is_hypergraphical()) {
        std::vector<Subset> edges;
        for (const auto& e : source.hypergraph().edges()) {
          if (e.weight.sign() > 0) edges.push_back(e.members);
        }
        sort_canonical(edges);
        for (Subset s : edges) check(s, PerturbationMode::kDecrement);
      }
    }

    int failures = 0;
    for (const auto& v : verdicts) failures += !v.ok();
    if (json_) {
      json list = json::array();
      for (const auto& v : verdicts) list.push_back(io::to_json(users, v));
      emit({{"checks", list}, {"failures", failures}});
    } else {
      for (const auto& v : verdicts) {
        out_ << (v.ok() ? "ok   " : "FAIL ") << to_string(v.mode) << " "
             << braces(users, v.set) << " eps=" << v.eps
             << " quotient=" << v.quotient << " formula=" << v.formula;
        if (v.optimal_subset_ok == false) out_ << " (optimal set not preserved)";
        if (v.granular_ok && !*v.granular_ok) {
          out_ << " (granular eps " << *v.granular_eps << " disagrees)";
        }
        out_ << "\n";
      }
      out_ << verdicts.size() << " checks, " << failures << " failures\n";
    }
    return failures == 0 ? kExitOk : kExitVerifyFailed;
  }

  int cmd_conjecture(const SourceModel& source, const MmiResult& r) {
    const UserSet& users = source.users();
    const ConjectureReport report = conjecture_check(source, r);
    if (json_) {
      emit(io::to_json(users, report));
      return kExitOk;
    }
    for (const auto& e : report.entries) {
      out_ << braces(users, e.edge) << ": rate " << e.rate << ", predicted "
           << e.predicted << (e.holds ? " (holds)" : " (VIOLATED)") << "\n";
    }
    return kExitOk;
  }

  int conjecture_batch() {
    if (req_.batch <= 0) {
      throw Error("conjecture needs a source file or --batch N");
    }
    gen::Rng rng(req_.seed);
    ConjectureTally tally;
    for (int i = 0; i < req_.batch; ++i) {
      const SourceModel source = gen::random_hypergraph(rng);
      accumulate(tally, conjecture_check(source, mmi(source, req_.cap)));
    }
    if (json_) {
      emit(io::to_json(tally));
    } else {
      out_ << "instances: " << tally.instances << "\n"
           << "critical edges: " << tally.edges << "\n"
           << "holds: " << tally.holds << "\n"
           << "violations: " << tally.violations << " (in "
           << tally.instances_with_violation << " instances)\n";
    }
    return kExitOk;
  }

  const AnalysisRequest& req_;
  std::ostream& out_;
  bool json_;
};

}  // namespace detail

/// Parses argv and runs one analysis. Returns the process exit code:
/// 0 success, 2 invalid input or usage, 3 failed perturbation identity.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err, const char* enum_cap_env = nullptr) {
  AnalysisRequest req;
  CLI::App app{"Secrecy capacity and incremental/decremental key agreement "
               "analysis of finite source models",
               "ska"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", req.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  const auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("source", req.source_path, "Source JSON document");
    return sub;
  };
  auto* c_mmi = add("mmi", "Multivariate mutual information and its optima");
  auto* c_part = add("partitions", "List all optimal partitions");
  auto* c_crit = add("critical", "Critical edges (minimum sets to add to)");
  auto* c_growth = add("growth", "Growth rates of order k, or of one set");
  c_growth->add_option("--k", req.k, "Largest order");
  c_growth->add_option("--set", req.set, "Set S, comma-separated labels");
  auto* c_loss = add("loss", "Loss rate of an edge");
  c_loss->add_option("--edge", req.edge, "Edge S")->required();
  auto* c_excess = add("excess", "Whether an edge is excess");
  c_excess->add_option("--edge", req.edge, "Edge S")->required();
  add("tmax", "Maximal optimal blocks and their T1/T2 case");
  add("unique", "Whether the optimal partition is unique");
  auto* c_verify = add("verify", "Check rate formulas against perturbation");
  c_verify->add_option("--set", req.set, "Only this increment set");
  c_verify->add_option("--edge", req.edge, "Only this decrement edge");
  c_verify->add_option("--eps", req.eps, "Perturbation size (default gap/2)");
  auto* c_conj = add("conjecture", "Critical-edge growth-rate conjecture");
  c_conj->add_option("--batch", req.batch, "Random instances when no source");
  c_conj->add_option("--seed", req.seed, "Seed for random instances");
  add("validate", "Check normalization, monotonicity, submodularity");
  (void)c_mmi;
  (void)c_part;
  (void)c_crit;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  req.command = app.get_subcommands().front()->get_name();

  if (enum_cap_env != nullptr && *enum_cap_env != '\0') {
    try {
      std::size_t used = 0;
      req.cap = std::stoi(enum_cap_env, &used);
      if (used != std::string(enum_cap_env).size() || req.cap < 2 ||
          req.cap > kMaxGroundSize) {
        throw std::invalid_argument("range");
      }
    } catch (const std::exception&) {
      err << "error: SKA_ENUM_CAP must be an integer in [2, "
          << kMaxGroundSize << "]\n";
      return kExitInvalid;
    }
  }

  try {
    return detail::Runner(req, out).run();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace ska::cli

#endif  // SKA_TOOLS_CLI_HPP_
