#include "lexalign/study.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "lexalign/error.hpp"
#include "lexalign/report.hpp"

namespace lexalign {
namespace {

StudyMetadata meta_from(const std::string& text) {
  std::stringstream in(text);
  return parse_metadata(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    (void)meta_from(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(Study, Conditions) {
  EXPECT_EQ(parse_condition("HR"), Condition::hr);
  EXPECT_EQ(parse_condition("H-H-R"), Condition::hhr);
  EXPECT_EQ(condition_name(Condition::hhr), "HHR");
  EXPECT_THROW(parse_condition("HRR"), ValidationError);
}

TEST(Study, MeasureLabels) {
  EXPECT_EQ(measure_label(MeasureKind::er_agent, "Emma"), "ER_Emma");
  EXPECT_EQ(measure_label(MeasureKind::ee_student), "EE_student");
  EXPECT_EQ(measure_label(MeasureKind::ied), "IED");
}

TEST(Study, DirectRapport) {
  const auto m = meta_from("participant,condition,rapport\np1,HR,4.5\np2,HHR,2\n");
  ASSERT_EQ(m.participants.size(), 2u);
  EXPECT_FALSE(m.has_items());
  EXPECT_EQ(m.participants[0].rapport, 4.5);
  EXPECT_EQ(m.participants[1].condition, Condition::hhr);
}

TEST(Study, ItemLayout) {
  const auto m = meta_from("participant,condition,item1,item2,item3\np1,HR,1,2,3\n");
  EXPECT_TRUE(m.has_items());
  EXPECT_EQ(m.items(), (LikertMatrix{{1, 2, 3}}));
}

TEST(Study, MetadataErrors) {
  EXPECT_EQ(parse_error_line("participant,condition,rapport\np1,HR,7\n"), 2u);
  EXPECT_EQ(parse_error_line("participant,condition,rapport\np1,HR,4\np1,HHR,3\n"), 3u);
  EXPECT_EQ(parse_error_line("participant,condition,rapport\np1,XX,4\n"), 2u);
  EXPECT_EQ(parse_error_line("participant,condition,item1\np1,HR,0\n"), 2u);
  EXPECT_EQ(parse_error_line("participant,condition,mood\n"), 1u);
  EXPECT_EQ(parse_error_line("who,condition,rapport\n"), 1u);
  EXPECT_EQ(parse_error_line("participant,condition,rapport\np1,HR\n"), 2u);
}

TEST(Study, ItemLists) {
  EXPECT_EQ(parse_item_list("4-15").size(), 12u);
  EXPECT_EQ(parse_item_list("4-15").front(), 3u);
  EXPECT_EQ(parse_item_list("5,1,2-3,2"), (std::vector<std::size_t>{0, 1, 2, 4}));
  EXPECT_THROW(parse_item_list("0-3"), ValidationError);
  EXPECT_THROW(parse_item_list("3-1"), ValidationError);
  EXPECT_THROW(parse_item_list(""), ValidationError);
  EXPECT_THROW(parse_item_list("a"), ValidationError);
}

TEST(Study, Get) {
  ParticipantAlignment a;
  a.er_student = 0.1;
  a.ied = 0.4;
  EXPECT_EQ(a.get(MeasureKind::er_student), 0.1);
  EXPECT_EQ(a.get(MeasureKind::ied), 0.4);
  EXPECT_FALSE(a.get(MeasureKind::ee_agent));
}

MetricsRow row(std::string dialogue, std::string speaker, std::string partner, double er) {
  MetricsRow r;
  r.dialogue = std::move(dialogue);
  r.speaker = std::move(speaker);
  r.partner = std::move(partner);
  r.er = er;
  r.ee = er / 2;
  r.ied = 0.2;
  return r;
}

TEST(Join, PicksAgentDialogue) {
  const auto meta = meta_from("participant,condition,rapport\np1,HR,4\np2,HHR,3\np3,HHR,5\n");
  std::vector<MetricsRow> rows = {
      row("a__Emma__p1", "p1", "Emma", 0.1), row("a__Emma__p1", "Emma", "p1", 0.2),
      row("b__Emma__p2", "p2", "Emma", 0.3), row("b__p2__p3", "p2", "p3", 0.9),
      row("b__p2__p3", "p3", "p2", 0.8)};
  rows[0].partner_er = 0.2;
  const auto join = join_study(meta, rows, parse_item_list("1"));
  ASSERT_EQ(join.records.size(), 2u);
  EXPECT_EQ(join.records[0].alignment.agent, "Emma");
  EXPECT_EQ(join.records[0].alignment.er_agent, 0.2);
  EXPECT_EQ(join.records[1].alignment.er_student, 0.3);
  ASSERT_EQ(join.failures.size(), 1u);
  EXPECT_NE(join.failures[0].find("p3"), std::string::npos);
}

TEST(Join, AmbiguousAgent) {
  const auto meta = meta_from("participant,condition,rapport\np1,HR,4\n");
  const std::vector<MetricsRow> rows = {row("x", "p1", "Emma", 0.1), row("y", "p1", "Max", 0.1)};
  const auto join = join_study(meta, rows, parse_item_list("1"));
  EXPECT_TRUE(join.records.empty());
  EXPECT_EQ(join.failures.size(), 1u);
}

TEST(Join, ItemScoredRapport) {
  const auto meta = meta_from("participant,condition,item1,item2,item3\np1,HR,1,4,6\n");
  const std::vector<MetricsRow> rows = {row("x", "p1", "Emma", 0.1)};
  const auto join = join_study(meta, rows, parse_item_list("2-3"));
  ASSERT_EQ(join.records.size(), 1u);
  EXPECT_EQ(join.records[0].rapport, 5.0);
}

TEST(Report, ReportDecimal) {
  EXPECT_EQ(report_decimal(0.5938), ".594");
  EXPECT_EQ(report_decimal(-0.3151), "-.315");
  EXPECT_EQ(report_decimal(1.3), "1.300");
  EXPECT_EQ(report_decimal(-0.0001), ".000");
  EXPECT_EQ(report_decimal(4.0 / 33.0), ".121");
  EXPECT_EQ(stars(0.004), "**");
  EXPECT_EQ(stars(0.03), "*");
  EXPECT_EQ(stars(0.2), "");
}

TEST(Report, MetricsCsvRoundTrip) {
  std::stringstream csv(
      "dialogue,speaker,partner,tokens,initiated,expressions,mean_expression_length,ie,er,ee,ied,"
      "mean_expression_length_exact,ie_exact,er_exact,ee_exact,ied_exact\n"
      "d,A,B,33,7,10,1.300,0.700,0.121,0.091,0.400,13/10,7/10,4/33,1/11,2/5\n"
      "d,B,A,84,3,10,1.300,0.300,0.167,0.095,0.400,13/10,3/10,1/6,2/21,2/5\n"
      "e,,,0,0,0,,,,,,,,,,\n");
  const auto rows = read_metrics_csv(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(*rows[0].er, 4.0 / 33.0);
  EXPECT_DOUBLE_EQ(*rows[0].partner_er, 1.0 / 6.0);
  EXPECT_EQ(rows[1].tokens, 84u);
}

TEST(Report, MetricsCsvDecimalsOnly) {
  std::stringstream csv("dialogue,speaker,partner,er,ee,ied\nd,A,B,0.5,0.25,\n");
  const auto rows = read_metrics_csv(csv);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].er, 0.5);
  EXPECT_FALSE(rows[0].ied);
}

TEST(Report, MetricsCsvErrors) {
  std::stringstream missing("dialogue,speaker\nd,A\n");
  EXPECT_THROW(read_metrics_csv(missing), ParseError);
  std::stringstream bad("dialogue,speaker,partner,er,ee,ied\nd,A,B,x,0,0\n");
  try {
    read_metrics_csv(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

std::vector<StudyRecord> records(std::size_t n_hr, std::size_t n_hhr) {
  std::vector<StudyRecord> out;
  for (std::size_t i = 0; i < n_hr + n_hhr; ++i) {
    StudyRecord r;
    r.participant = "p" + std::to_string(i);
    r.condition = i < n_hr ? Condition::hr : Condition::hhr;
    const double x = static_cast<double>((i * 7) % 11) / 20.0;
    r.rapport = 2.0 + x * 3 + static_cast<double>(i % 3) * 0.2;
    auto& a = r.alignment;
    a.agent = "Emma";
    a.er_student = x;
    a.ee_student = x / 2;
    a.er_agent = 0.1 + static_cast<double>(i % 5) / 40.0;
    a.ee_agent = 0.05 + static_cast<double>(i % 4) / 50.0;
    a.ied = static_cast<double>(i % 6) / 10.0;
    a.mean_expression_length = 1.0 + static_cast<double>(i % 4) / 4.0;
    out.push_back(std::move(r));
  }
  return out;
}

TEST(Report, SingleConditionKeepsPearson) {
  const auto rep = analyze_study(records(10, 0));
  for (const auto& d : rep.descriptives) {
    EXPECT_FALSE(d.anova);
    EXPECT_FALSE(d.reason.empty());
  }
  for (const auto& c : rep.by_condition) {
    EXPECT_FALSE(c.fisher);
    EXPECT_FALSE(c.reason.empty());
  }
  for (const auto& c : rep.interaction) EXPECT_FALSE(c.fit);
  for (const auto& c : rep.pooled) EXPECT_TRUE(c.r) << c.reason;
  std::ostringstream text;
  write_study_report(text, rep, ReportFormat::text);
  EXPECT_NE(text.str().find("note: ANOVA for Rapport: single condition"), std::string::npos);
}

TEST(Report, IdenticalGroupsGiveZeroF) {
  auto recs = records(6, 0);
  auto copy = recs;
  for (auto& r : copy) r.condition = Condition::hhr;
  recs.insert(recs.end(), copy.begin(), copy.end());
  const auto rep = analyze_study(recs);
  for (const auto& d : rep.descriptives) {
    ASSERT_TRUE(d.anova) << d.label;
    EXPECT_NEAR(d.anova->f, 0.0, 1e-12);
  }
}

TEST(Report, Shapes) {
  const auto rep = analyze_study(records(12, 26));
  EXPECT_EQ(rep.agent, "Emma");
  EXPECT_EQ(rep.descriptives.size(), 7u);
  EXPECT_EQ(rep.descriptives[0].anova->df_within, 36);
  EXPECT_EQ(rep.interaction.size(), 5u);
  EXPECT_EQ(rep.pooled.size(), 5u);
  EXPECT_EQ(rep.pooled[0].r->n, 38u);
  for (const auto& c : rep.by_condition) EXPECT_TRUE(c.fisher) << c.reason;

  std::ostringstream a, b;
  write_study_report(a, rep, ReportFormat::json);
  write_study_report(b, analyze_study(records(12, 26)), ReportFormat::json);
  EXPECT_EQ(a.str(), b.str());
  const auto j = nlohmann::json::parse(a.str());
  EXPECT_EQ(j["interaction"].size(), 5u);
  EXPECT_EQ(j["interaction"][0]["measure"], "ER_student");
  EXPECT_EQ(j["interaction"][2]["measure"], "ER_Emma");
}

TEST(Report, UndefinedMeasuresDropped) {
  auto recs = records(12, 26);
  recs[0].alignment.er_student.reset();
  recs[20].alignment.er_student.reset();
  const auto rep = analyze_study(recs);
  EXPECT_EQ(rep.pooled[0].r->n, 36u);
  EXPECT_EQ(rep.pooled[0].dropped, 2u);
  EXPECT_EQ(rep.interaction[0].fit->dropped, 2u);
  EXPECT_EQ(rep.descriptives[1].hr.n, 11u);
}

TEST(Report, Reliability) {
  auto rep = analyze_study(records(12, 26));
  const LikertMatrix items = {{1, 2, 3, 3}, {2, 3, 4, 4}, {6, 5, 5, 6}, {3, 3, 2, 2}};
  add_reliability(rep, items, parse_item_list("2-4"));
  ASSERT_EQ(rep.reliability.size(), 2u);
  EXPECT_TRUE(rep.reliability[0].result);
  EXPECT_FALSE(rep.reliability[1].result);  // a single remaining item
  EXPECT_FALSE(rep.reliability[1].reason.empty());
}

}  // namespace
}  // namespace lexalign
