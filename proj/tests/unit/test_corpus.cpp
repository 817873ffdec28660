#include <doctest.h>

#include "support.hpp"
#include "tweetsense/corpus.hpp"
#include "tweetsense/error.hpp"
#include "tweetsense/text.hpp"

using namespace tweetsense;

namespace {

const char* kHeader = "id\tuser_id\ttarget\tlabel\ttext\n";

std::filesystem::path write_tsv(const testing::TempDir& dir, const std::string& body) {
  const auto path = dir / "corpus.tsv";
  write_file_atomic(path, body);
  return path;
}

}  // namespace

TEST_CASE("load_corpus parses every label") {
  testing::TempDir dir;
  const auto path = write_tsv(dir, std::string(kHeader) +
                                       "1\tu1\thcr\tpositive\tgreat day\n"
                                       "2\tu2\thcr\tNEGATIVE\tbad day\n"
                                       "3\tu1\thcr\tNeutral\tsome day\n"
                                       "4\tu3\thcr\tunsure\tmaybe\n"
                                       "5\tu3\thcr\tirrelevant\tlunch\n"
                                       "6\tu4\thcr\t\tno label\n");
  const auto c = load_corpus(path, true);
  REQUIRE(c.size() == 6);
  CHECK(c.tweets[0].label == Label::positive);
  CHECK(c.tweets[1].label == Label::negative);
  CHECK(c.tweets[2].label == Label::neutral);
  CHECK(c.tweets[3].label == Label::unsure);
  CHECK(c.tweets[4].label == Label::irrelevant);
  CHECK(c.tweets[5].label == Label::unlabeled);
  CHECK(c.tweets[0].user_id == "u1");
  CHECK(c.tweets[0].target == "hcr");
  CHECK(c.tweets[1].text == "bad day");
}

TEST_CASE("load_corpus edge cases and errors") {
  testing::TempDir dir;
  SUBCASE("header only") { CHECK(load_corpus(write_tsv(dir, kHeader), true).empty()); }
  SUBCASE("four columns") {
    const auto path = write_tsv(dir, std::string(kHeader) + "1\tu1\tpositive\ttext\n");
    CHECK_THROWS_AS(load_corpus(path, true), MalformedRow);
    try {
      load_corpus(path, true);
    } catch (const MalformedRow& e) {
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }
  SUBCASE("duplicate id") {
    const auto path =
        write_tsv(dir, std::string(kHeader) + "1\tu\tt\tpositive\ta\n1\tu\tt\tpositive\tb\n");
    CHECK_THROWS_AS(load_corpus(path, true), DuplicateId);
  }
  SUBCASE("unknown label") {
    const auto path = write_tsv(dir, std::string(kHeader) + "1\tu\tt\tpostive\ta\n");
    CHECK_THROWS_AS(load_corpus(path, true), MalformedRow);
  }
  SUBCASE("empty text") {
    const auto path = write_tsv(dir, std::string(kHeader) + "1\tu\tt\tpositive\t   \n");
    CHECK_THROWS_AS(load_corpus(path, true), MalformedRow);
  }
  SUBCASE("overlong text") {
    const auto path =
        write_tsv(dir, std::string(kHeader) + "1\tu\tt\tpositive\t" + std::string(561, 'x') + "\n");
    CHECK_THROWS_AS(load_corpus(path, true), MalformedRow);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_corpus(dir / "nope.tsv", true), MissingFile); }
}

TEST_CASE("filter_labels keeps the three sentiment classes in order") {
  Corpus c;
  for (auto [id, label] : std::vector<std::pair<std::string, Label>>{
           {"a", Label::positive}, {"b", Label::negative}, {"c", Label::unsure},
           {"d", Label::irrelevant}, {"e", Label::neutral}}) {
    c.tweets.push_back({id, "u", "t", label, "x"});
  }
  const auto f = filter_labels(c);
  REQUIRE(f.size() == 3);
  CHECK(f.tweets[0].id == "a");
  CHECK(f.tweets[1].id == "b");
  CHECK(f.tweets[2].id == "e");
  CHECK(filter_labels(f).size() == 3);

  Corpus unsure;
  unsure.tweets.push_back({"x", "u", "t", Label::unsure, "x"});
  CHECK(filter_labels(unsure).empty());
}

TEST_CASE("save then load round-trips byte-identically") {
  testing::TempDir dir;
  const auto src = testing::fixtures_dir() / "synthetic" / "train.tsv";
  const auto c = load_corpus(src, true);
  save_corpus(c, dir / "copy.tsv", true);
  CHECK(read_file(dir / "copy.tsv") == read_file(src));
  const auto again = load_corpus(dir / "copy.tsv", true);
  CHECK(serialize_corpus(again, true) == serialize_corpus(c, true));
}

TEST_CASE("corpus_stats on the hand-traced tweet") {
  Corpus c;
  c.tweets.push_back({"1", "u", "t", Label::positive, "RT @u GOOD :) #hcr"});
  const auto s = corpus_stats(c, testing::shipped_lexicons(), testing::shipped_tagger());
  CHECK(s.rt_count == 1);
  CHECK(s.mention_count == 1);
  CHECK(s.hashtag_count == 1);
  CHECK(s.pos_emoticons == 1);
  CHECK(s.neg_emoticons == 0);
  CHECK(s.capitalized_words == 1);
  CHECK(s.weak_pos == 1);
  CHECK(s.class_histogram.at(Label::positive) == 1);
}

TEST_CASE("corpus_stats of an empty corpus is all zero") {
  const auto s = corpus_stats(Corpus{}, testing::shipped_lexicons(), testing::shipped_tagger());
  CHECK(s == StatsReport{.class_histogram = s.class_histogram});
  for (const auto& [label, n] : s.class_histogram) CHECK(n == 0);
  const auto j = s.to_json();
  CHECK(j.contains("token_count"));
  CHECK(j.contains("neg_emoticons"));
  CHECK(j["class_histogram"].size() == 6);
}

TEST_CASE("corpus_stats is additive and the fixture keeps a 2:1 negative ratio") {
  const auto c = load_corpus(testing::fixtures_dir() / "synthetic" / "train.tsv", true);
  Corpus a, b;
  for (std::size_t i = 0; i < c.size(); ++i) (i % 2 ? a : b).tweets.push_back(c.tweets[i]);
  const auto& lex = testing::shipped_lexicons();
  const auto& tagger = testing::shipped_tagger();
  auto sum = corpus_stats(a, lex, tagger);
  sum += corpus_stats(b, lex, tagger);
  CHECK(sum == corpus_stats(c, lex, tagger));

  const auto s = corpus_stats(c, lex, tagger);
  std::size_t total = 0;
  for (const auto& [_, n] : s.class_histogram) total += n;
  CHECK(total == c.size());
  const double ratio = static_cast<double>(s.class_histogram.at(Label::negative)) /
                       static_cast<double>(s.class_histogram.at(Label::positive));
  CHECK(ratio > 1.2);
  CHECK(ratio < 2.5);
  CHECK_FALSE(s.to_table().empty());
}
