#include "lexalign/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include <fmt/core.h>

#include "lexalign/csv.hpp"
#include "lexalign/error.hpp"

namespace lexalign {
namespace {

using nlohmann::ordered_json;

constexpr const char* kMissing = "-";

const std::vector<std::string> kMetricsColumns = {
    "dialogue",  "speaker",  "partner",  "tokens",
    "initiated", "expressions", "mean_expression_length",
    "ie",        "er",       "ee",       "ied",
    "mean_expression_length_exact", "ie_exact", "er_exact", "ee_exact",
    "ied_exact"};

std::string fixed3(const Measure& m) {
  return m ? fmt::format("{:.3f}", to_double(*m)) : std::string();
}

std::string exact(const Measure& m) { return m ? format_exact(*m) : std::string(); }

std::string measure_cell(const Measure& m) {
  return m ? report_decimal(to_double(*m)) : std::string(kMissing);
}

std::string p_text(double p) {
  if (p < 0.0005) return ".000";
  return report_decimal(p);
}

ordered_json opt_json(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

ordered_json finite_json(double v) {
  if (!std::isfinite(v)) return v > 0 ? ordered_json("inf") : ordered_json("-inf");
  return v;
}

Summary summarize(const std::vector<double>& v) {
  Summary s;
  s.n = v.size();
  if (v.empty()) return s;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  s.mean = m;
  if (v.size() >= 2) {
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

std::string mean_sd(const Summary& s) {
  if (!s.mean) return kMissing;
  return report_decimal(*s.mean) + " (" + (s.sd ? report_decimal(*s.sd) : kMissing) + ")";
}

std::optional<double> parse_optional(const std::string& decimal, const std::string& exact_text,
                                     std::size_t line, const std::string& column) {
  try {
    if (!exact_text.empty()) return to_double(parse_exact(exact_text));
    if (!decimal.empty()) return to_double(parse_exact(decimal));
  } catch (const ValidationError& e) {
    throw ParseError(line, "column " + column + ": " + e.what());
  }
  return std::nullopt;
}

std::size_t parse_count(const std::string& text, std::size_t line, const std::string& column) {
  try {
    const auto f = parse_exact(text.empty() ? "0" : text);
    if (f.denominator() != 1 || f.numerator() < 0) throw ValidationError("not a count");
    return static_cast<std::size_t>(f.numerator());
  } catch (const ValidationError&) {
    throw ParseError(line, "column " + column + " is not a count: '" + text + "'");
  }
}

template <typename Fn>
std::string capture(Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::text;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ValidationError("unknown report format '" + std::string(name) +
                        "' (expected text, csv or json)");
}

std::string report_decimal(double value, int places) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
  std::string s = fmt::format("{:.{}f}", value, places);
  if (s.rfind("0.", 0) == 0) {
    s.erase(0, 1);
  } else if (s.rfind("-0.", 0) == 0) {
    s.erase(1, 1);
  }
  if (s == "-.000" || s == "-.00") s.erase(0, 1);
  return s;
}

std::string stars(double p) {
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

// ---------------------------------------------------------------------------

void write_metrics(std::ostream& out, std::span<const DialogueMetrics> rows,
                   ReportFormat format) {
  if (format == ReportFormat::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"dialogue", r.dialogue},
                     {"metrics", r.metrics ? metrics_to_json(*r.metrics) : ordered_json()}});
    }
    out << arr.dump(2) << '\n';
    return;
  }
  if (format == ReportFormat::csv) {
    csv::write_row(out, kMetricsColumns);
    for (const auto& r : rows) {
      if (!r.metrics) {
        std::vector<std::string> f(kMetricsColumns.size());
        f[0] = r.dialogue;
        f[3] = f[4] = f[5] = "0";
        csv::write_row(out, f);
        continue;
      }
      const auto& m = *r.metrics;
      for (std::size_t s = 0; s < 2; ++s) {
        const auto& sp = m.speakers[s];
        csv::write_row(out, {r.dialogue, sp.speaker, m.speakers[1 - s].speaker,
                             std::to_string(sp.tokens), std::to_string(sp.initiated),
                             std::to_string(m.expression_count),
                             fixed3(m.mean_expression_length), fixed3(sp.ie),
                             fixed3(sp.er), fixed3(sp.ee), fixed3(m.ied),
                             exact(m.mean_expression_length), exact(sp.ie),
                             exact(sp.er), exact(sp.ee), exact(m.ied)});
      }
    }
    return;
  }

  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, r.dialogue.size());
  std::size_t swidth = 7;
  for (const auto& r : rows) {
    if (!r.metrics) continue;
    for (const auto& sp : r.metrics->speakers) swidth = std::max(swidth, sp.speaker.size());
  }
  out << fmt::format("{:<{}}  {:<{}}  {:>6}  {:>5}  {:>5}  {:>5}  {:>5}  {:>5}  {:>8}\n",
                     "dialogue", width, "speaker", swidth, "tokens", "IE", "ER", "EE",
                     "IED", "expr", "mean_len");
  for (const auto& r : rows) {
    if (!r.metrics) {
      out << fmt::format("{:<{}}  {:<{}}  {:>6}  {:>5}  {:>5}  {:>5}  {:>5}  {:>5}  {:>8}\n",
                         r.dialogue, width, kMissing, swidth, 0, kMissing, kMissing,
                         kMissing, kMissing, 0, kMissing);
      continue;
    }
    const auto& m = *r.metrics;
    for (const auto& sp : m.speakers) {
      out << fmt::format("{:<{}}  {:<{}}  {:>6}  {:>5}  {:>5}  {:>5}  {:>5}  {:>5}  {:>8}\n",
                         r.dialogue, width, sp.speaker, swidth, sp.tokens, measure_cell(sp.ie),
                         measure_cell(sp.er), measure_cell(sp.ee), measure_cell(m.ied), m.expression_count,
                         measure_cell(m.mean_expression_length));
    }
  }
}

namespace {

void link_partners(std::vector<MetricsRow>& rows) {
  std::map<std::pair<std::string, std::string>, std::size_t> by_key;
  for (std::size_t i = 0; i < rows.size(); ++i) by_key[{rows[i].dialogue, rows[i].speaker}] = i;
  for (auto& r : rows) {
    const auto it = by_key.find({r.dialogue, r.partner});
    if (it != by_key.end()) {
      r.partner_er = rows[it->second].er;
      r.partner_ee = rows[it->second].ee;
    }
  }
}

}  // namespace

std::vector<MetricsRow> to_rows(std::span<const DialogueMetrics> rows) {
  std::vector<MetricsRow> out;
  for (const auto& d : rows) {
    if (!d.metrics) continue;
    const auto& m = *d.metrics;
    for (std::size_t s = 0; s < 2; ++s) {
      const auto& sp = m.speakers[s];
      MetricsRow r;
      r.dialogue = d.dialogue;
      r.speaker = sp.speaker;
      r.partner = m.speakers[1 - s].speaker;
      r.tokens = sp.tokens;
      r.expressions = m.expression_count;
      r.mean_expression_length = to_double(m.mean_expression_length);
      r.ie = to_double(sp.ie);
      r.er = to_double(sp.er);
      r.ee = to_double(sp.ee);
      r.ied = to_double(m.ied);
      out.push_back(std::move(r));
    }
  }
  link_partners(out);
  return out;
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<MetricsRow> rows;
  const auto header = reader.next();
  if (!header) return rows;
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header->fields.size(); ++i) col[header->fields[i]] = i;
  for (const char* required : {"dialogue", "speaker", "partner", "er", "ee", "ied"}) {
    if (!col.contains(required)) {
      throw ParseError(header->line, std::string("metrics header lacks column '") +
                                         required + "'");
    }
  }
  while (auto rec = reader.next()) {
    if (rec->fields.size() != header->fields.size()) {
      throw ParseError(rec->line, "expected " + std::to_string(header->fields.size()) +
                                      " fields, got " + std::to_string(rec->fields.size()));
    }
    auto field = [&](const std::string& name) -> std::string {
      const auto it = col.find(name);
      return it == col.end() ? std::string() : rec->fields[it->second];
    };
    auto measure = [&](const std::string& name) {
      return parse_optional(field(name), field(name + "_exact"), rec->line, name);
    };
    MetricsRow r;
    r.dialogue = field("dialogue");
    r.speaker = field("speaker");
    r.partner = field("partner");
    if (r.speaker.empty()) continue;  // empty dialogue
    r.tokens = parse_count(field("tokens"), rec->line, "tokens");
    r.expressions = parse_count(field("expressions"), rec->line, "expressions");
    r.mean_expression_length = measure("mean_expression_length");
    r.ie = measure("ie");
    r.er = measure("er");
    r.ee = measure("ee");
    r.ied = measure("ied");
    rows.push_back(std::move(r));
  }
  link_partners(rows);
  return rows;
}

// ---------------------------------------------------------------------------

JoinResult join_study(const StudyMetadata& meta, std::span<const MetricsRow> rows,
                      std::span<const std::size_t> items) {
  JoinResult out;
  std::set<std::string> participants;
  for (const auto& p : meta.participants) participants.insert(p.participant);

  for (const auto& p : meta.participants) {
    std::vector<const MetricsRow*> candidates;
    for (const auto& r : rows) {
      if (r.speaker == p.participant && !r.partner.empty() &&
          !participants.contains(r.partner)) {
        candidates.push_back(&r);
      }
    }
    if (candidates.size() != 1) {
      out.failures.push_back(
          "participant '" + p.participant + "': " +
          (candidates.empty() ? std::string("no dialogue with a non-participant partner")
                              : std::to_string(candidates.size()) +
                                    " candidate agent dialogues"));
      continue;
    }
    const auto& r = *candidates.front();
    StudyRecord rec;
    rec.participant = p.participant;
    rec.condition = p.condition;
    if (p.rapport) {
      rec.rapport = *p.rapport;
    } else {
      const LikertMatrix one = {p.items};
      rec.rapport = stats::score_rapport(one, items).front();
    }
    auto& a = rec.alignment;
    a.dialogue = r.dialogue;
    a.agent = r.partner;
    a.ie_student = r.ie;
    a.er_student = r.er;
    a.ee_student = r.ee;
    a.er_agent = r.partner_er;
    a.ee_agent = r.partner_ee;
    a.ied = r.ied;
    a.expression_count = r.expressions;
    a.mean_expression_length = r.mean_expression_length;
    out.records.push_back(std::move(rec));
  }
  return out;
}

StudyReport analyze_study(std::span<const StudyRecord> records) {
  StudyReport rep;
  std::set<std::string> agents;
  for (const auto& r : records) {
    agents.insert(r.alignment.agent);
    (r.condition == Condition::hr ? rep.n_hr : rep.n_hhr) += 1;
  }
  if (agents.size() == 1 && !agents.begin()->empty()) rep.agent = *agents.begin();

  using Getter = std::function<std::optional<double>(const StudyRecord&)>;
  std::vector<std::pair<std::string, Getter>> rows;
  rows.emplace_back("Rapport", [](const StudyRecord& r) { return std::optional(r.rapport); });
  for (auto kind : kAllMeasures) {
    rows.emplace_back(measure_label(kind, rep.agent),
                      [kind](const StudyRecord& r) { return r.alignment.get(kind); });
  }
  rows.emplace_back("Expression length", [](const StudyRecord& r) {
    return r.alignment.mean_expression_length;
  });

  for (const auto& [label, get] : rows) {
    std::vector<double> hr;
    std::vector<double> hhr;
    for (const auto& r : records) {
      if (const auto v = get(r)) (r.condition == Condition::hr ? hr : hhr).push_back(*v);
    }
    DescriptiveRow row;
    row.label = label;
    row.hr = summarize(hr);
    row.hhr = summarize(hhr);
    if (hr.empty() || hhr.empty()) {
      row.reason = "single condition";
    } else {
      const std::vector<std::vector<double>> groups = {hr, hhr};
      row.reason = capture([&] { row.anova = stats::anova_oneway(groups); });
    }
    rep.descriptives.push_back(std::move(row));
  }

  for (auto kind : kAllMeasures) {
    InteractionCell cell{kind, std::nullopt, {}};
    cell.reason = capture([&] { cell.fit = stats::ols_interaction(records, kind); });
    rep.interaction.push_back(std::move(cell));

    auto correlate = [&](std::optional<Condition> only, std::size_t* dropped) {
      std::vector<double> x;
      std::vector<double> y;
      for (const auto& r : records) {
        if (only && r.condition != *only) continue;
        if (const auto v = r.alignment.get(kind)) {
          x.push_back(*v);
          y.push_back(r.rapport);
        } else if (dropped) {
          ++*dropped;
        }
      }
      return stats::pearson(x, y);
    };

    PooledCell pooled{kind, std::nullopt, 0, {}};
    pooled.reason = capture([&] { pooled.r = correlate(std::nullopt, &pooled.dropped); });
    rep.pooled.push_back(std::move(pooled));

    ConditionCell cond{kind, std::nullopt, std::nullopt, std::nullopt, {}};
    std::vector<std::string> reasons;
    if (auto why = capture([&] { cond.hr = correlate(Condition::hr, nullptr); }); !why.empty()) {
      reasons.push_back("HR: " + why);
    }
    if (auto why = capture([&] { cond.hhr = correlate(Condition::hhr, nullptr); }); !why.empty()) {
      reasons.push_back("HHR: " + why);
    }
    if (cond.hr && cond.hhr) {
      if (auto why = capture([&] {
            cond.fisher = stats::fisher_compare(cond.hr->r, cond.hr->n, cond.hhr->r, cond.hhr->n);
          });
          !why.empty()) {
        reasons.push_back("Fisher: " + why);
      }
    }
    for (const auto& s : reasons) {
      if (!cond.reason.empty()) cond.reason += "; ";
      cond.reason += s;
    }
    rep.by_condition.push_back(std::move(cond));
  }
  return rep;
}

void add_reliability(StudyReport& report, const LikertMatrix& items,
                     std::span<const std::size_t> selection) {
  const std::size_t k = items.empty() ? 0 : items.front().size();
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < k; ++c) {
    if (!std::binary_search(selection.begin(), selection.end(), c)) rest.push_back(c);
  }
  auto describe = [](std::span<const std::size_t> sel) {
    std::string s;
    for (auto c : sel) s += (s.empty() ? "" : ",") + std::to_string(c + 1);
    return s;
  };
  for (const auto& [label, sel] :
       {std::pair{"selected items (" + describe(selection) + ")",
                  std::vector<std::size_t>(selection.begin(), selection.end())},
        std::pair{"other items (" + describe(rest) + ")", rest}}) {
    ReliabilityCell cell{label, std::nullopt, {}};
    cell.reason = capture([&] { cell.result = stats::cronbach_alpha(items, sel); });
    report.reliability.push_back(std::move(cell));
  }
}

// ---------------------------------------------------------------------------

ordered_json study_report_to_json(const StudyReport& rep) {
  ordered_json out;
  out["agent"] = rep.agent;
  out["n"] = {{"HR", rep.n_hr}, {"HHR", rep.n_hhr}, {"total", rep.n_hr + rep.n_hhr}};
  auto summary = [](const Summary& s) {
    return ordered_json{{"n", s.n}, {"mean", opt_json(s.mean)}, {"sd", opt_json(s.sd)}};
  };
  ordered_json desc = ordered_json::array();
  for (const auto& r : rep.descriptives) {
    ordered_json j{{"measure", r.label}, {"HR", summary(r.hr)}, {"HHR", summary(r.hhr)}};
    if (r.anova) {
      j["anova"] = {{"F", finite_json(r.anova->f)},
                    {"p", r.anova->p},
                    {"df_between", r.anova->df_between},
                    {"df_within", r.anova->df_within}};
    } else {
      j["anova"] = nullptr;
      j["reason"] = r.reason;
    }
    desc.push_back(std::move(j));
  }
  out["descriptives"] = std::move(desc);

  ordered_json inter = ordered_json::array();
  for (const auto& c : rep.interaction) {
    ordered_json j{{"measure", measure_label(c.measure, rep.agent)}};
    if (c.fit) {
      ordered_json coef = ordered_json::array();
      for (Eigen::Index i = 0; i < c.fit->beta.size(); ++i) {
        coef.push_back({{"estimate", c.fit->beta[i]},
                        {"std_err", c.fit->std_err[i]},
                        {"t", finite_json(c.fit->t[i])},
                        {"p", c.fit->p[i]}});
      }
      j["beta3"] = c.fit->beta[3];
      j["p"] = c.fit->p[3];
      j["n"] = c.fit->n;
      j["dropped"] = c.fit->dropped;
      j["coefficients"] = std::move(coef);
    } else {
      j["beta3"] = nullptr;
      j["reason"] = c.reason;
    }
    inter.push_back(std::move(j));
  }
  out["interaction"] = std::move(inter);

  ordered_json pooled = ordered_json::array();
  for (const auto& c : rep.pooled) {
    ordered_json j{{"measure", measure_label(c.measure, rep.agent)}};
    if (c.r) {
      j["r"] = c.r->r;
      j["p"] = c.r->p;
      j["n"] = c.r->n;
      j["dropped"] = c.dropped;
    } else {
      j["r"] = nullptr;
      j["reason"] = c.reason;
    }
    pooled.push_back(std::move(j));
  }
  out["pooled"] = std::move(pooled);

  ordered_json cond = ordered_json::array();
  for (const auto& c : rep.by_condition) {
    auto corr = [](const std::optional<stats::CorrelationResult>& r) -> ordered_json {
      if (!r) return nullptr;
      return {{"r", r->r}, {"p", r->p}, {"n", r->n}};
    };
    ordered_json j{{"measure", measure_label(c.measure, rep.agent)},
                   {"HR", corr(c.hr)},
                   {"HHR", corr(c.hhr)}};
    if (c.fisher) {
      j["fisher"] = {{"z", c.fisher->z}, {"p", c.fisher->p}};
    } else {
      j["fisher"] = nullptr;
    }
    if (!c.reason.empty()) j["reason"] = c.reason;
    cond.push_back(std::move(j));
  }
  out["by_condition"] = std::move(cond);

  ordered_json rel = ordered_json::array();
  for (const auto& c : rep.reliability) {
    ordered_json j{{"items", c.label}};
    if (c.result) {
      j["alpha"] = c.result->alpha;
      j["k"] = c.result->k;
      j["n"] = c.result->n;
    } else {
      j["alpha"] = nullptr;
      j["reason"] = c.reason;
    }
    rel.push_back(std::move(j));
  }
  out["reliability"] = std::move(rel);
  out["join_failures"] = rep.join_failures;
  return out;
}

namespace {

void write_csv_report(std::ostream& out, const StudyReport& rep) {
  csv::write_row(out, {"table", "row", "column", "value", "note"});
  auto num = [](double v) { return fmt::format("{}", v); };
  auto row = [&](const std::string& table, const std::string& r, const std::string& c,
                 const std::string& v, const std::string& note = {}) {
    csv::write_row(out, {table, r, c, v, note});
  };
  for (const auto& d : rep.descriptives) {
    for (const auto& [name, s] : {std::pair{"HR", d.hr}, std::pair{"HHR", d.hhr}}) {
      row("descriptives", d.label, std::string(name) + "_n", std::to_string(s.n));
      row("descriptives", d.label, std::string(name) + "_mean", s.mean ? num(*s.mean) : "");
      row("descriptives", d.label, std::string(name) + "_sd", s.sd ? num(*s.sd) : "");
    }
    if (d.anova) {
      row("descriptives", d.label, "F", num(d.anova->f));
      row("descriptives", d.label, "p", num(d.anova->p));
      row("descriptives", d.label, "df_between", std::to_string(d.anova->df_between));
      row("descriptives", d.label, "df_within", std::to_string(d.anova->df_within));
    } else {
      row("descriptives", d.label, "F", "", d.reason);
    }
  }
  for (const auto& c : rep.interaction) {
    const auto label = measure_label(c.measure, rep.agent);
    if (c.fit) {
      row("interaction", "Rapport", label + "_beta3", num(c.fit->beta[3]));
      row("interaction", "Rapport", label + "_p", num(c.fit->p[3]));
    } else {
      row("interaction", "Rapport", label + "_beta3", "", c.reason);
    }
  }
  for (const auto& c : rep.pooled) {
    const auto label = measure_label(c.measure, rep.agent);
    if (c.r) {
      row("pooled", "Rapport", label + "_r", num(c.r->r));
      row("pooled", "Rapport", label + "_p", num(c.r->p));
      row("pooled", "Rapport", label + "_n", std::to_string(c.r->n));
    } else {
      row("pooled", "Rapport", label + "_r", "", c.reason);
    }
  }
  for (const auto& c : rep.by_condition) {
    const auto label = measure_label(c.measure, rep.agent);
    row("by_condition", label, "HR_r", c.hr ? num(c.hr->r) : "", c.hr ? "" : c.reason);
    row("by_condition", label, "HHR_r", c.hhr ? num(c.hhr->r) : "", c.hhr ? "" : c.reason);
    row("by_condition", label, "fisher_z", c.fisher ? num(c.fisher->z) : "",
        c.fisher ? "" : c.reason);
    row("by_condition", label, "fisher_p", c.fisher ? num(c.fisher->p) : "",
        c.fisher ? "" : c.reason);
  }
  for (const auto& c : rep.reliability) {
    row("reliability", c.label, "alpha", c.result ? num(c.result->alpha) : "", c.reason);
  }
  for (const auto& f : rep.join_failures) row("join", "", "failure", "", f);
}

void write_text_report(std::ostream& out, const StudyReport& rep) {
  std::vector<std::string> notes;
  auto note = [&](const std::string& what, const std::string& why) {
    notes.push_back(what + ": " + why);
  };
  auto flush_notes = [&] {
    for (const auto& n : notes) out << "  note: " << n << '\n';
    notes.clear();
    out << '\n';
  };

  out << fmt::format("Participants: {} (H-R n={}, H-H-R n={})\n\n", rep.n_hr + rep.n_hhr,
                     rep.n_hr, rep.n_hhr);

  out << "Descriptive statistics by condition, Mean (SD); one-way ANOVA across conditions\n";
  out << fmt::format("{:<20} {:<16} {:<16} {:>8} {:>6} {:>7}\n", "Measure",
                     fmt::format("H-R (n={})", rep.n_hr), fmt::format("H-H-R (n={})", rep.n_hhr),
                     "F", "p", "df");
  for (const auto& d : rep.descriptives) {
    std::string label = d.label;
    std::string f = kMissing;
    std::string p = kMissing;
    std::string df = kMissing;
    if (d.anova) {
      label += stars(d.anova->p);
      f = report_decimal(d.anova->f);
      p = p_text(d.anova->p);
      df = fmt::format("{},{}", d.anova->df_between, d.anova->df_within);
    } else {
      note("ANOVA for " + d.label, d.reason);
    }
    out << fmt::format("{:<20} {:<16} {:<16} {:>8} {:>6} {:>7}\n", label, mean_sd(d.hr),
                       mean_sd(d.hhr), f, p, df);
  }
  out << "  SD uses the n-1 denominator; * p<.05, ** p<.01 (two-tailed).\n";
  flush_notes();

  std::vector<std::string> labels;
  for (auto kind : kAllMeasures) labels.push_back(measure_label(kind, rep.agent));
  auto header = [&](const std::string& first) {
    out << fmt::format("{:<10}", first);
    for (const auto& l : labels) out << fmt::format(" {:>14}", l);
    out << '\n';
  };

  out << "Coefficients of interaction terms, estimate of beta3 (p):\n"
         "  Rapport = b0 + b1*HHR + b2*A + b3*HHR*A\n";
  header("");
  out << fmt::format("{:<10}", "Rapport");
  for (const auto& c : rep.interaction) {
    std::string cell = kMissing;
    if (c.fit) {
      cell = fmt::format("{:.2f} ({})", c.fit->beta[3], p_text(c.fit->p[3]));
    } else {
      note("regression for " + measure_label(c.measure, rep.agent), c.reason);
    }
    out << fmt::format(" {:>14}", cell);
  }
  out << '\n';
  flush_notes();

  out << "Pearson's correlations between alignment measures and rapport, r (p):\n";
  header("");
  out << fmt::format("{:<10}", "Rapport");
  for (const auto& c : rep.pooled) {
    std::string cell = kMissing;
    if (c.r) {
      cell = report_decimal(c.r->r) + stars(c.r->p) + " (" + p_text(c.r->p) + ")";
      if (c.dropped) note(measure_label(c.measure, rep.agent),
                          std::to_string(c.dropped) + " record(s) without a value dropped");
    } else {
      note("correlation for " + measure_label(c.measure, rep.agent), c.reason);
    }
    out << fmt::format(" {:>14}", cell);
  }
  out << '\n';
  out << fmt::format("{:<10}", "n");
  for (const auto& c : rep.pooled) {
    out << fmt::format(" {:>14}", c.r ? std::to_string(c.r->n) : std::string(kMissing));
  }
  out << '\n';
  flush_notes();

  out << "Comparison of Pearson's correlations across conditions (Fisher r-to-z):\n";
  out << fmt::format("{:<14} {:>12} {:>12} {:>8} {:>6}\n", "Pearson's r",
                     fmt::format("H-R (n={})", rep.n_hr), fmt::format("H-H-R (n={})", rep.n_hhr),
                     "z", "p");
  for (const auto& c : rep.by_condition) {
    const auto label = measure_label(c.measure, rep.agent);
    out << fmt::format("{:<14} {:>12} {:>12} {:>8} {:>6}\n", label,
                       c.hr ? report_decimal(c.hr->r) : kMissing,
                       c.hhr ? report_decimal(c.hhr->r) : kMissing,
                       c.fisher ? report_decimal(c.fisher->z) : kMissing,
                       c.fisher ? p_text(c.fisher->p) : kMissing);
    if (!c.reason.empty()) note(label, c.reason);
  }
  flush_notes();

  if (!rep.reliability.empty()) {
    out << "Reliability (Cronbach's alpha):\n";
    for (const auto& c : rep.reliability) {
      out << fmt::format("  {:<48} {}\n", c.label,
                         c.result ? report_decimal(c.result->alpha) : std::string(kMissing));
      if (!c.result) note(c.label, c.reason);
    }
    flush_notes();
  }

  if (!rep.join_failures.empty()) {
    out << "Join failures:\n";
    for (const auto& f : rep.join_failures) out << "  " << f << '\n';
    out << '\n';
  }
}

}  // namespace

void write_study_report(std::ostream& out, const StudyReport& report,
                        ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      out << study_report_to_json(report).dump(2) << '\n';
      break;
    case ReportFormat::csv:
      write_csv_report(out, report);
      break;
    case ReportFormat::text:
      write_text_report(out, report);
      break;
  }
}

}  // namespace lexalign
