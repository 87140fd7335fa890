//
// Copyright 2026 The ngdb Authors
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
//

#include "ngdb/evaluator/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "ngdb/common/error.hpp"

namespace ngdb {
namespace {

std::size_t TypeSlot(QueryType t) { return static_cast<std::size_t>(t); }
std::size_t ClassSlot(AnswerClass c) { return static_cast<std::size_t>(c); }

std::string Percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * x);
  return buf;
}

std::string Cell(const Metrics& m, double Metrics::*field) {
  return m.count == 0 ? "-" : Percent(m.*field);
}

std::string CellWithRatio(const Metrics& m, const Metrics& base,
                          double Metrics::*field) {
  std::string s = Cell(m, field);
  if (m.count == 0 || base.count == 0 || base.*field == 0.0) return s;
  char buf[32];
  std::snprintf(buf, sizeof(buf), " (%.1f%%)",
                100.0 * (m.*field / base.*field));
  return s + buf;
}

nlohmann::json MetricsJson(const Metrics& m) {
  return {{"hr1", m.hr1},
          {"hr3", m.hr3},
          {"hr10", m.hr10},
          {"mrr", m.mrr},
          {"count", m.count}};
}

Metrics MetricsFromJson(const nlohmann::json& j) {
  return {j.at("hr1").get<double>(), j.at("hr3").get<double>(),
          j.at("hr10").get<double>(), j.at("mrr").get<double>(),
          j.at("count").get<std::size_t>()};
}

void CheckModelMatches(const Encoder& encoder, const Vocabulary& vocab) {
  if (encoder.num_vertices() != vocab.num_vertices() ||
      encoder.num_relations() != vocab.num_relations()) {
    throw InvalidArgument(
        "model tables (" + std::to_string(encoder.num_vertices()) +
        " vertices, " + std::to_string(encoder.num_relations()) +
        " relations) do not match the benchmark vocabulary (" +
        std::to_string(vocab.num_vertices()) + " vertices, " +
        std::to_string(vocab.num_relations()) + " relations)");
  }
}

void CheckAnswers(std::span<const VertexId> s, const Vocabulary& vocab,
                  std::size_t query_index) {
  for (VertexId v : s) {
    if (!vocab.Contains(v)) {
      throw InvalidArgument("benchmark query " + std::to_string(query_index) +
                            " has an answer outside the vocabulary");
    }
  }
}

}  // namespace

std::size_t Rank(std::span<const double> scores, VertexId target,
                 std::span<const VertexId> filter_out) {
  const std::size_t t = Index(target);
  if (t >= scores.size()) {
    throw NotFound("rank target #" + std::to_string(t) + " has no score");
  }
  const double s = scores[t];
  if (std::isnan(s)) throw InvalidArgument("rank target score is NaN");
  std::vector<bool> skip(scores.size(), false);
  for (VertexId v : filter_out) {
    if (v == target) throw InvalidArgument("rank target is filtered out");
    if (Index(v) < skip.size()) skip[Index(v)] = true;
  }
  std::size_t rank = 1;
  for (std::size_t u = 0; u < scores.size(); ++u) {
    if (u == t || skip[u]) continue;
    // NaN competitors count against the target, like ties.
    if (!(scores[u] < s)) ++rank;
  }
  return rank;
}

Metrics ComputeMetrics(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw InvalidArgument("metrics of an empty rank list");
  Metrics m;
  for (std::size_t r : ranks) {
    if (r == 0) throw InvalidArgument("ranks start at 1");
    m.hr1 += r <= 1 ? 1.0 : 0.0;
    m.hr3 += r <= 3 ? 1.0 : 0.0;
    m.hr10 += r <= 10 ? 1.0 : 0.0;
    m.mrr += 1.0 / static_cast<double>(r);
  }
  const double n = static_cast<double>(ranks.size());
  m.hr1 /= n;
  m.hr3 /= n;
  m.hr10 /= n;
  m.mrr /= n;
  m.count = ranks.size();
  return m;
}

double UniformMrr(std::size_t n) {
  if (n == 0) throw InvalidArgument("UniformMrr needs at least one candidate");
  double h = 0.0;
  for (std::size_t r = n; r >= 1; --r) h += 1.0 / static_cast<double>(r);
  return h / static_cast<double>(n);
}

std::string_view ClassName(AnswerClass c) {
  return c == AnswerClass::kPrivate ? "private" : "public";
}

std::optional<AnswerClass> ParseClass(std::string_view name) {
  if (name == "public") return AnswerClass::kPublic;
  if (name == "private") return AnswerClass::kPrivate;
  return std::nullopt;
}

const Metrics& EvalReport::Cell(QueryType type, AnswerClass c) const {
  if (type == QueryType::kOther) {
    throw InvalidArgument("reports keep no per-type cell for other queries");
  }
  return per_type[TypeSlot(type)][ClassSlot(c)];
}

EvalReport ReportFromRanks(std::vector<RankRecord> ranks) {
  std::array<std::array<std::vector<std::size_t>, 2>, kBenchmarkTypes.size()>
      cells;
  std::array<std::vector<std::size_t>, 2> pooled;
  for (const RankRecord& r : ranks) {
    if (r.type != QueryType::kOther) {
      cells[TypeSlot(r.type)][ClassSlot(r.answer_class)].push_back(r.rank);
    }
    pooled[ClassSlot(r.answer_class)].push_back(r.rank);
  }
  EvalReport report;
  for (std::size_t t = 0; t < cells.size(); ++t) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (!cells[t][c].empty()) {
        report.per_type[t][c] = ComputeMetrics(cells[t][c]);
      }
    }
  }
  for (std::size_t c = 0; c < 2; ++c) {
    if (!pooled[c].empty()) report.all[c] = ComputeMetrics(pooled[c]);
  }
  report.ranks = std::move(ranks);
  return report;
}

std::string_view ProtectionName(Protection::Kind kind) {
  return kind == Protection::Kind::kNoise ? "noise" : "none";
}

std::optional<Protection::Kind> ParseProtection(std::string_view name) {
  if (name == "none") return Protection::Kind::kNone;
  if (name == "noise") return Protection::Kind::kNoise;
  return std::nullopt;
}

EvalReport EvaluateModel(const Encoder& encoder, const Vocabulary& vocab,
                         std::span<const BenchmarkQuery> test_queries,
                         const Protection& protection) {
  CheckModelMatches(encoder, vocab);
  std::vector<RankRecord> records;
  for (std::size_t i = 0; i < test_queries.size(); ++i) {
    const BenchmarkQuery& q = test_queries[i];
    try {
      ValidateQuery(q.query, vocab);
    } catch (const NotFound& e) {
      throw InvalidArgument("benchmark query " + std::to_string(i) + ": " +
                            e.what());
    }
    CheckAnswers(q.valid_answers, vocab, i);
    CheckAnswers(q.test_answers.public_members, vocab, i);
    CheckAnswers(q.test_answers.private_members, vocab, i);

    const VertexSet public_targets =
        SetDifference(q.test_answers.public_members, q.valid_answers);
    const VertexSet& private_targets = q.test_answers.private_members;
    if (public_targets.empty() && private_targets.empty()) continue;

    const VertexSet known = SetUnion(q.test_answers.All(), q.valid_answers);
    const std::vector<double> scores =
        protection.kind == Protection::Kind::kNoise
            ? NoisyScoreAll(encoder, q.query, protection.noise, i)
            : encoder.ScoreAll(q.query);
    std::vector<VertexId> filter;
    filter.reserve(known.size());
    const auto rank_all = [&](const VertexSet& targets, AnswerClass c) {
      for (VertexId t : targets) {
        filter.clear();
        for (VertexId v : known) {
          if (v != t) filter.push_back(v);
        }
        records.push_back({i, q.type, c, t, Rank(scores, t, filter)});
      }
    };
    rank_all(public_targets, AnswerClass::kPublic);
    rank_all(private_targets, AnswerClass::kPrivate);
  }
  return ReportFromRanks(std::move(records));
}

void WriteSummaryTsv(
    std::ostream& out,
    std::span<const std::pair<std::string, EvalReport>> rows) {
  out << "label\tpublic_HR@3\tpublic_MRR\tprivate_HR@3\tprivate_MRR\n";
  for (const auto& [label, report] : rows) {
    const Metrics& pub = report.All(AnswerClass::kPublic);
    const Metrics& priv = report.All(AnswerClass::kPrivate);
    out << label << '\t' << Cell(pub, &Metrics::hr3) << '\t'
        << Cell(pub, &Metrics::mrr) << '\t' << Cell(priv, &Metrics::hr3)
        << '\t' << Cell(priv, &Metrics::mrr) << '\n';
  }
}

void WritePerTypeTsv(std::ostream& out, const EvalReport& report,
                     const EvalReport* baseline) {
  static constexpr std::pair<const char*, double Metrics::*> kFields[] = {
      {"HR@1", &Metrics::hr1},
      {"HR@3", &Metrics::hr3},
      {"HR@10", &Metrics::hr10},
      {"MRR", &Metrics::mrr}};
  out << "class\tmetric";
  for (QueryType t : kBenchmarkTypes) out << '\t' << TypeName(t);
  out << "\tAll\n";
  for (AnswerClass c : kAnswerClasses) {
    for (const auto& [name, field] : kFields) {
      out << ClassName(c) << '\t' << name;
      for (QueryType t : kBenchmarkTypes) {
        const Metrics& m = report.Cell(t, c);
        out << '\t'
            << (baseline ? CellWithRatio(m, baseline->Cell(t, c), field)
                         : Cell(m, field));
      }
      const Metrics& m = report.All(c);
      out << '\t'
          << (baseline ? CellWithRatio(m, baseline->All(c), field)
                       : Cell(m, field))
          << '\n';
    }
  }
}

void WriteRanksTsv(std::ostream& out, const EvalReport& report) {
  out << "query_index\ttype\tclass\ttarget_id\trank\n";
  for (const RankRecord& r : report.ranks) {
    out << r.query_index << '\t' << TypeName(r.type) << '\t'
        << ClassName(r.answer_class) << '\t' << Index(r.target) << '\t'
        << r.rank << '\n';
  }
}

void WriteReportJson(std::ostream& out, const EvalReport& report) {
  nlohmann::ordered_json j;
  j["format"] = "ngdb-eval-report";
  j["version"] = 1;
  nlohmann::ordered_json per_type;
  for (QueryType t : kBenchmarkTypes) {
    nlohmann::ordered_json cell;
    for (AnswerClass c : kAnswerClasses) {
      cell[std::string(ClassName(c))] = MetricsJson(report.Cell(t, c));
    }
    per_type[std::string(TypeName(t))] = std::move(cell);
  }
  j["per_type"] = std::move(per_type);
  nlohmann::ordered_json all;
  for (AnswerClass c : kAnswerClasses) {
    all[std::string(ClassName(c))] = MetricsJson(report.All(c));
  }
  j["all"] = std::move(all);
  nlohmann::json ranks = nlohmann::json::array();
  for (const RankRecord& r : report.ranks) {
    ranks.push_back({r.query_index, std::string(TypeName(r.type)),
                     std::string(ClassName(r.answer_class)), Index(r.target),
                     r.rank});
  }
  j["ranks"] = std::move(ranks);
  out << j.dump(1) << '\n';
}

EvalReport ReadReportJson(std::istream& in) {
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format") != "ngdb-eval-report" || j.at("version") != 1) {
      throw InvalidArgument("not an ngdb evaluation report");
    }
    std::vector<RankRecord> ranks;
    for (const auto& r : j.at("ranks")) {
      const auto type = ParseType(r.at(1).get<std::string>());
      const auto c = ParseClass(r.at(2).get<std::string>());
      if (!type || !c) throw InvalidArgument("bad rank record " + r.dump());
      ranks.push_back({r.at(0).get<std::size_t>(), *type, *c,
                       MakeVertexId(r.at(3).get<std::size_t>()),
                       r.at(4).get<std::size_t>()});
    }
    EvalReport report;
    for (QueryType t : kBenchmarkTypes) {
      for (AnswerClass c : kAnswerClasses) {
        report.per_type[TypeSlot(t)][ClassSlot(c)] = MetricsFromJson(
            j.at("per_type").at(std::string(TypeName(t))).at(
                std::string(ClassName(c))));
      }
    }
    for (AnswerClass c : kAnswerClasses) {
      report.all[ClassSlot(c)] =
          MetricsFromJson(j.at("all").at(std::string(ClassName(c))));
    }
    report.ranks = std::move(ranks);
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("evaluation report: ") + e.what(), 0);
  }
}

CalibrationResult CalibrateSigma(const Encoder& encoder,
                                 const Vocabulary& vocab,
                                 std::span<const BenchmarkQuery> test_queries,
                                 double target_public_mrr, std::uint64_t seed,
                                 double tolerance,
                                 std::size_t max_evaluations) {
  if (!(target_public_mrr > 0.0) || !(tolerance > 0.0) ||
      max_evaluations == 0) {
    throw InvalidArgument(
        "calibration needs a positive target, tolerance and budget");
  }
  CalibrationResult best;
  double best_gap = std::numeric_limits<double>::infinity();
  const auto probe = [&](double sigma) {
    const EvalReport r = EvaluateModel(
        encoder, vocab, test_queries,
        {Protection::Kind::kNoise, NoiseConfig{sigma, seed}});
    ++best.evaluations;
    const double mrr = r.All(AnswerClass::kPublic).mrr;
    const double gap = std::abs(mrr - target_public_mrr) / target_public_mrr;
    if (gap < best_gap) {
      best_gap = gap;
      best.sigma = sigma;
      best.public_metrics = r.All(AnswerClass::kPublic);
      best.private_metrics = r.All(AnswerClass::kPrivate);
    }
    return mrr;
  };
  const auto done = [&] {
    best.converged = best_gap <= tolerance;
    return best.converged || best.evaluations >= max_evaluations;
  };

  // Noise-free MRR already at or below the target: sigma = 0 is the answer
  // if it is inside the band, otherwise no amount of noise helps.
  if (probe(0.0) <= target_public_mrr || done()) {
    done();
    return best;
  }
  double lo = 0.0;
  double hi = 0.05;
  while (probe(hi) > target_public_mrr) {
    if (done()) return best;
    lo = hi;
    hi *= 2.0;
  }
  while (!done()) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid) > target_public_mrr) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

}  // namespace ngdb
