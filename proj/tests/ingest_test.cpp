#include "maintlm/ingest.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "maintlm/error.hpp"

namespace maintlm {
namespace {

const std::string kHeader = "period,enhancements,corrections,days_enh,days_corr\n";

// The four rows of the published maintenance table.
const std::string kTable1 = kHeader +
                            "r1,5,5,17,8\n"
                            "r2,11,9,23,20\n"
                            "r3,5,8,24,13\n"
                            "r4,4,5,10,16\n";

ErrorKind kind_of(const std::string& text) {
  try {
    parse_change_log(std::string_view(text));
  } catch (const Error& e) {
    EXPECT_EQ(e.module(), "ingest");
    return e.kind();
  }
  ADD_FAILURE() << "expected a parse error";
  return ErrorKind::kIo;
}

TEST(ParseChangeLog, TableRowOne) {
  const auto recs = parse_change_log(std::string_view(kHeader + "2007-04,5,5,17,8\n"));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0], (MaintenanceRecord{"2007-04", 5, 5, 17.0, 8.0}));
}

TEST(ParseChangeLog, ZeroRecordIsLegal) {
  const auto recs = parse_change_log(std::string_view(kHeader + "p,0,0,0,0\n"));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0], (MaintenanceRecord{"p", 0, 0, 0.0, 0.0}));
}

TEST(ParseChangeLog, TableRowFour) {
  const auto recs = parse_change_log(std::string_view(kHeader + "p,4,5,10,16\n"));
  EXPECT_EQ(recs.at(0), (MaintenanceRecord{"p", 4, 5, 10.0, 16.0}));
}

TEST(ParseChangeLog, KeepsFileOrder) {
  const auto recs = parse_change_log(std::string_view(kTable1));
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0].period_id, "r1");
  EXPECT_EQ(recs[3].period_id, "r4");
}

TEST(ParseChangeLog, AcceptsCrlfAndTrailingBlankLine) {
  const auto recs = parse_change_log(std::string_view(
      "period,enhancements,corrections,days_enh,days_corr\r\na,1,2,3.5,4\r\n\r\n"));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_DOUBLE_EQ(recs[0].days_enh, 3.5);
}

TEST(ParseChangeLog, FractionalDays) {
  const auto recs = parse_change_log(std::string_view(kHeader + "a,1,1,0.25,1.75\n"));
  EXPECT_DOUBLE_EQ(recs.at(0).days_enh, 0.25);
  EXPECT_DOUBLE_EQ(recs.at(0).days_corr, 1.75);
}

TEST(ParseChangeLog, Errors) {
  EXPECT_EQ(kind_of("period,e,c,de,dc\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(""), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,1,2,3\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,1,2,3,4,5\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,x,2,3,4\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,1.5,2,3,4\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,-1,2,3,4\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,1,2,-3,4\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,1,2,3,nan\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + ",1,2,3,4\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,1,2,3,4\n\nb,1,2,3,4\n"), ErrorKind::kParse);
  EXPECT_EQ(kind_of(kHeader + "a,1,2,3,4\na,5,6,7,8\n"), ErrorKind::kDuplicate);
}

TEST(ParseChangeLog, ErrorNamesLineAndDuplicate) {
  try {
    parse_change_log(std::string_view(kHeader + "a,1,2,3,4\nb,1,oops,3,4\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_change_log(std::string_view(kHeader + "a,1,2,3,4\na,1,2,3,4\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos) << e.what();
  }
}

TEST(BuildSamples, TableRows) {
  const MaintenanceRecord row2{"r2", 11, 9, 23, 20};
  const MaintenanceRecord row3{"r3", 5, 8, 24, 13};
  EXPECT_EQ(build_samples({row2}, InputVariant::kSum).at(0), (SamplePair{20, 43}));
  EXPECT_EQ(build_samples({row3}, InputVariant::kEnhancementsOnly).at(0), (SamplePair{5, 24}));
  EXPECT_EQ(build_samples({row3}, InputVariant::kCorrectionsOnly).at(0), (SamplePair{8, 13}));
  EXPECT_EQ(build_samples({{"z", 0, 0, 0, 0}}, InputVariant::kSum).at(0), (SamplePair{0, 0}));
}

TEST(BuildSamples, TableOneSumColumnsMatchPublishedXY) {
  const auto s = build_samples(parse_change_log(std::string_view(kTable1)), InputVariant::kSum);
  const std::vector<SamplePair> expected{{10, 25}, {20, 43}, {13, 37}, {9, 26}};
  EXPECT_EQ(s, expected);
}

TEST(BuildSamples, EmptyIsAnError) {
  EXPECT_THROW(build_samples({}, InputVariant::kSum), Error);
}

TEST(Variant, NamesRoundTrip) {
  for (auto v : {InputVariant::kSum, InputVariant::kEnhancementsOnly,
                 InputVariant::kCorrectionsOnly}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("both"), Error);
}

std::vector<MaintenanceRecord> random_records(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> count(0, 50);
  std::uniform_real_distribution<double> days(0.0, 200.0);
  std::vector<MaintenanceRecord> recs(1 + gen() % 30);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    recs[i] = {"id" + std::to_string(i), count(gen), count(gen), days(gen), days(gen)};
  }
  return recs;
}

TEST(IngestProperties, SerializeParseRoundTrip) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto recs = random_records(gen);
    EXPECT_EQ(parse_change_log(std::string_view(change_log_to_string(recs))), recs);
  }
}

TEST(IngestProperties, SumIsEnhancementsPlusCorrections) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto recs = random_records(gen);
    const auto sum = build_samples(recs, InputVariant::kSum);
    const auto enh = build_samples(recs, InputVariant::kEnhancementsOnly);
    const auto corr = build_samples(recs, InputVariant::kCorrectionsOnly);
    ASSERT_EQ(sum.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      EXPECT_EQ(sum[i].x, enh[i].x + corr[i].x);
      EXPECT_EQ(sum[i].y, enh[i].y + corr[i].y);
    }
    EXPECT_EQ(build_samples(recs, InputVariant::kSum), sum);
  }
}

}  // namespace
}  // namespace maintlm
