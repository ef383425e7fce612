#include "augbin/data_io.hpp"

#include <filesystem>
#include <map>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace augbin {
namespace {

DatasetSchema xy_schema(std::vector<std::string> numeric = {"x1"}) {
  DatasetSchema schema;
  schema.categorical = "category";
  schema.numeric = std::move(numeric);
  schema.target = "y";
  return schema;
}

Dataset parse(const std::string& text, const DatasetSchema& schema,
              const CategoryVocab* vocab = nullptr) {
  std::istringstream in(text);
  return parse_csv(in, schema, vocab);
}

TEST(ParseCsv, BuildsLexicographicVocab) {
  const Dataset d = parse("category,x1,y\nb,1.5,2\na,0.5,1\nb,-1,0\n", xy_schema());
  EXPECT_EQ(d.vocab.size(), 2u);
  EXPECT_EQ(d.vocab.id("a"), CategoryId{1});
  EXPECT_EQ(d.vocab.id("b"), CategoryId{2});
  ASSERT_EQ(d.rows.size(), 3u);
  EXPECT_EQ(d.rows[0].category, CategoryId{2});
  EXPECT_EQ(d.rows[0].numeric, (std::vector<double>{1.5}));
  EXPECT_EQ(d.rows[2].target, (std::vector<double>{0.0}));
}

TEST(ParseCsv, ColumnOrderFollowsHeader) {
  const Dataset d = parse("y,x1,category\n3,4,z\n", xy_schema());
  EXPECT_EQ(d.rows[0].numeric, (std::vector<double>{4.0}));
  EXPECT_EQ(d.rows[0].target, (std::vector<double>{3.0}));
}

TEST(ParseCsv, HeaderOnlyIsEmptyDatasetError) {
  EXPECT_THROW(parse("category,x1,y\n", xy_schema()), DataError);
  EXPECT_THROW(parse("", xy_schema()), DataError);
}

TEST(ParseCsv, NaNReportedWithPosition) {
  try {
    parse("category,x1,y\na,1,2\nb,NaN,3\n", xy_schema());
    FAIL() << "expected a parse error";
  } catch (const DataError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(ParseCsv, StructuralErrors) {
  EXPECT_THROW(parse("category,y\na,1\n", xy_schema()), DataError);       // missing x1
  EXPECT_THROW(parse("category,x1,y\na,1\n", xy_schema()), DataError);    // short row
  EXPECT_THROW(parse("category,x1,y\na,1x,2\n", xy_schema()), DataError); // bad number
  EXPECT_THROW(parse("category,x1,y\n\"a,1,2\n", xy_schema()), DataError);
}

TEST(ParseCsv, QuotedCategoriesAndCrlf) {
  const Dataset d = parse("category,x1,y\r\n\"x, y\",1,2\r\nplain,3,4\r\n", xy_schema());
  EXPECT_TRUE(d.vocab.contains("x, y"));
  EXPECT_EQ(d.rows.size(), 2u);
}

TEST(ParseCsv, FixedVocabularyMiss) {
  const CategoryVocab vocab = build_vocab({"a", "b"});
  EXPECT_NO_THROW(parse("category,x1,y\nb,1,2\n", xy_schema(), &vocab));
  EXPECT_THROW(parse("category,x1,y\nc,1,2\n", xy_schema(), &vocab), VocabMissError);
}

TEST(Schema, RejectsDuplicatesAndTargetAsFeature) {
  DatasetSchema schema = xy_schema({"x1", "x1"});
  EXPECT_THROW(schema.validate(), std::invalid_argument);
  schema = xy_schema({"y"});
  EXPECT_THROW(schema.validate(), std::invalid_argument);
}

TEST(CompositeId, SingletonsAndCanonicalization) {
  CompositeRegistry registry(build_vocab({"a", "b", "c"}));
  EXPECT_EQ(composite_id({"a"}, registry), CategoryId{1});
  const CategoryId ab = composite_id({"a", "b"}, registry);
  EXPECT_EQ(composite_id({"b", "a"}, registry), ab);
  const CategoryId ac = composite_id({"a", "c"}, registry);
  EXPECT_NE(ab, ac);
  EXPECT_EQ(registry.vocab().size(), 5u);
  EXPECT_EQ(registry.vocab().bit_width(), 3u);
  EXPECT_EQ(composite_id({"a", "b", "a"}, registry), ab);
  EXPECT_THROW(composite_id({}, registry), std::invalid_argument);
  EXPECT_THROW(composite_id({"a", "zzz"}, registry), VocabMissError);
}

TEST(CompositeId, InjectiveOnDistinctSets) {
  CompositeRegistry registry(build_vocab({"a", "b", "c", "d"}));
  std::map<CategoryId, std::string> seen;
  const std::vector<std::string> labels = {"a", "b", "c", "d"};
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<std::string> set;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask & (1u << i)) set.push_back(labels[i]);
    }
    const CategoryId id = composite_id(set, registry);
    const std::string key = CompositeRegistry::canonical_key(set);
    auto [it, inserted] = seen.emplace(id, key);
    EXPECT_TRUE(inserted || it->second == key);
  }
  EXPECT_EQ(seen.size(), 15u);
}

TEST(ParseCsv, MultiLabelCellsBecomeCompositeCategories) {
  DatasetSchema schema = xy_schema();
  schema.multi_label = true;
  const Dataset d = parse("category,x1,y\na,1,1\nc|a,1,1\nb,1,1\na|b,1,1\nb|a,1,1\nc,1,1\n",
                          schema);
  EXPECT_EQ(d.vocab.size(), 5u);
  EXPECT_EQ(d.vocab.bit_width(), 3u);
  EXPECT_EQ(d.rows[0].category, CategoryId{1});
  EXPECT_EQ(d.rows[3].category, d.rows[4].category);
  // Composites are numbered after the base labels in sorted key order.
  EXPECT_EQ(d.vocab.id("a|b"), CategoryId{4});
  EXPECT_EQ(d.vocab.id("a|c"), CategoryId{5});
}

TEST(SynthGen, FirstRowMatchesRecipe) {
  // Values from an independent run of the documented recipe.
  const Dataset d = synth_gen(42, 4, 2, 8, 0.5);
  ASSERT_EQ(d.rows.size(), 8u);
  EXPECT_EQ(d.rows[0].category, CategoryId{1});
  EXPECT_DOUBLE_EQ(d.rows[0].numeric[0], 0.6012637534270067);
  EXPECT_DOUBLE_EQ(d.rows[0].numeric[1], -0.3201379221659588);
  EXPECT_DOUBLE_EQ(d.rows[0].target[0], -0.11410558361445705);
  EXPECT_EQ(d.vocab.label(CategoryId{1}), "c1");
}

TEST(SynthGen, DeterministicBytes) {
  std::ostringstream a, b, c;
  write_csv(a, synth_gen(3, 12, 3, 50, 0.3));
  write_csv(b, synth_gen(3, 12, 3, 50, 0.3));
  write_csv(c, synth_gen(4, 12, 3, 50, 0.3));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(SynthGen, NoiselessWithoutNumericsDependsOnlyOnCategory) {
  const Dataset d = synth_gen(9, 5, 0, 200, 0.0);
  std::map<CategoryId, double> per_category;
  for (const auto& ex : d.rows) {
    auto [it, inserted] = per_category.emplace(ex.category, ex.target[0]);
    EXPECT_EQ(it->second, ex.target[0]);
  }
}

TEST(SynthGen, LabelsSortInIdOrder) {
  const Dataset d = synth_gen(1, 120, 0, 1, 0.0);
  for (std::uint32_t c = 1; c <= 120; ++c) {
    EXPECT_EQ(d.vocab.id(synth_label(c, 120)), CategoryId{c});
  }
  EXPECT_THROW(synth_gen(1, 0, 0, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(synth_gen(1, 1, 0, 0, 0.0), std::invalid_argument);
}

TEST(CsvRoundTrip, SaveThenLoadIsIdentity) {
  const Dataset original = synth_gen(17, 9, 3, 120, 0.7);
  const auto path = std::filesystem::temp_directory_path() / "augbin_roundtrip.csv";
  save_csv(path.string(), original);
  const Dataset loaded = load_csv(path.string(), original.schema);
  EXPECT_EQ(loaded.rows, original.rows);
  EXPECT_EQ(loaded.vocab.labels().size(), 9u);

  std::ostringstream a, b;
  write_csv(a, original);
  write_csv(b, loaded);
  EXPECT_EQ(a.str(), b.str());
  std::filesystem::remove(path);
}

TEST(LoadCsv, MissingFileIsIoError) {
  EXPECT_THROW(load_csv("/nonexistent/augbin.csv", xy_schema()), IoError);
}

}  // namespace
}  // namespace augbin
