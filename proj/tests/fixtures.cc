#include "fixtures.h"

#include <random>
#include <sstream>

#include "kseg/corpus_io.h"
#include "kseg/text.h"

namespace kseg::testing {

std::string data_path(const std::string& name) {
  return std::string(KSEG_TEST_DATA_DIR) + "/" + name;
}

std::string read_data(const std::string& name) { return read_file(data_path(name)); }

Sentence ungaro_sentence() { return read_morph_corpus(read_data("ungaro_morph.txt")).at(0); }

std::vector<Sentence> mini_corpus() { return read_morph_corpus(read_data("mini_corpus.txt")); }

std::vector<SyntaxTree> mini_trees() { return read_treebank(read_data("mini_trees.txt")); }

namespace {

struct Pool {
  SejongTag tag;
  std::vector<std::u32string> forms;
};

const std::vector<Pool>& Pools() {
  static const std::vector<Pool> pools = {
      {SejongTag::NNG, {U"사람", U"학교", U"나무", U"바다"}},
      {SejongTag::NNP, {U"서울", U"웅가로"}},
      {SejongTag::NNB, {U"개", U"것"}},
      {SejongTag::VV, {U"가", U"보", U"먹"}},
      {SejongTag::VA, {U"크", U"좋"}},
      {SejongTag::VCP, {U"이"}},
      {SejongTag::XSN, {U"적", U"들"}},
      {SejongTag::XSV, {U"하"}},
      {SejongTag::SN, {U"3", U"12"}},
      {SejongTag::SL, {U"ABC"}},
      {SejongTag::JKS, {U"가", U"이"}},
      {SejongTag::JKO, {U"를"}},
      {SejongTag::JKB, {U"로", U"에"}},
      {SejongTag::JX, {U"는", U"도"}},
      {SejongTag::EP, {U"었", U"시"}},
      {SejongTag::EF, {U"다", U"요"}},
      {SejongTag::EC, {U"고", U"어"}},
      {SejongTag::ETM, {U"ㄴ", U"ㄹ", U"는"}},
      {SejongTag::ETN, {U"ㅁ", U"기"}},
      {SejongTag::SF, {U".", U"?"}},
      {SejongTag::SP, {U","}},
      {SejongTag::SS, {U"\""}},
      {SejongTag::SW, {U"%"}},
  };
  return pools;
}

}  // namespace

std::vector<Sentence> random_sentences(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto pick = [&](std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
  };
  const auto& pools = Pools();
  std::vector<Sentence> out;
  for (std::size_t s = 0; s < n; ++s) {
    Sentence sentence;
    sentence.id = "R" + std::to_string(s + 1);
    const std::size_t eojeols = 1 + pick(6);
    for (std::size_t e = 0; e < eojeols; ++e) {
      EojeolAnalysis eojeol;
      std::u32string surface;
      const std::size_t morphemes = 1 + pick(5);
      for (std::size_t m = 0; m < morphemes; ++m) {
        const Pool& pool = pools[pick(pools.size())];
        std::u32string form = pool.forms[pick(pool.forms.size())];
        // Lone jamo only after an open syllable, where it fuses.
        if (form.size() == 1 && ending_jamo_tail(form[0])) {
          if (surface.empty() || !is_syllable(surface.back()) ||
              decompose_syllable(surface.back()).tail) {
            form = U"는";
          } else {
            JamoTriple t = decompose_syllable(surface.back());
            t.tail = ending_jamo_tail(form[0]);
            surface.back() = compose_syllable(t);
            eojeol.morphemes.push_back({to_utf8(form), pool.tag, std::nullopt});
            continue;
          }
        }
        surface += form;
        eojeol.morphemes.push_back({to_utf8(form), pool.tag, std::nullopt});
      }
      eojeol.surface = to_utf8(surface);
      sentence.eojeols.push_back(std::move(eojeol));
    }
    out.push_back(std::move(sentence));
  }
  return out;
}

namespace {

SyntaxTree Build(std::vector<SyntaxTree> nodes, std::mt19937& rng) {
  static const char* const kLabels[] = {"NP", "NP-SBJ", "NP-OBJ", "VP", "VNP-MOD", "NP-AJT"};
  while (nodes.size() > 1) {
    const std::size_t i =
        std::uniform_int_distribution<std::size_t>(0, nodes.size() - 2)(rng);
    const std::size_t width =
        std::min<std::size_t>(nodes.size() - i,
                              std::uniform_int_distribution<std::size_t>(2, 3)(rng));
    std::vector<SyntaxTree> kids(std::make_move_iterator(nodes.begin() + i),
                                 std::make_move_iterator(nodes.begin() + i + width));
    SyntaxTree parent = SyntaxTree::Phrase(kLabels[rng() % 6], std::move(kids));
    nodes.erase(nodes.begin() + i, nodes.begin() + i + width);
    nodes.insert(nodes.begin() + i, std::move(parent));
  }
  return SyntaxTree::Phrase("S", std::move(nodes));
}

}  // namespace

SyntaxTree random_tree(const Sentence& sentence, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<SyntaxTree> leaves;
  for (std::size_t e = 0; e < sentence.eojeols.size(); ++e) {
    const auto& eojeol = sentence.eojeols[e];
    TreeLeaf leaf;
    leaf.token = {e, {0, eojeol.morphemes.size()}, eojeol.surface,
                  composite_tag(eojeol.morphemes)};
    leaf.eojeol = eojeol;
    SyntaxTree pre = SyntaxTree::Preterminal(std::move(leaf));
    // Sejong trees put each eojeol under its own phrase.
    leaves.push_back(SyntaxTree::Phrase("NP", {std::move(pre)}));
  }
  return Build(std::move(leaves), rng);
}

ReferenceCounts mini_counts() {
  std::istringstream in(read_data("mini_counts.txt"));
  ReferenceCounts c;
  std::string key;
  while (in >> key) {
    if (key == "sentences") {
      in >> c.sentences;
    } else if (key == "eojeols") {
      in >> c.eojeols;
    } else if (key == "dictionary") {
      in >> c.dictionary;
    } else if (key.rfind("level", 0) == 0) {
      LevelCounts& l = c.level[key[5] - '0'];
      std::string name;
      in >> name >> l.tokens >> name >> l.complex >> name >> l.tags >> name >> l.vocabulary;
    }
  }
  return c;
}

std::vector<Sentence> toy_tagger_corpus() {
  std::mt19937 rng(7);
  const std::vector<std::string> tags = {"JKS", "NNG", "VV"};
  const std::vector<std::string> forms = {"가", "나"};
  std::vector<Sentence> corpus;
  for (int s = 0; s < 40; ++s) {
    Sentence sentence;
    sentence.id = "toy" + std::to_string(s);
    const int length = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < length; ++i) {
      std::string form;
      std::string tag;
      if (rng() % 4 == 0) {
        form = "다";
        tag = "JKS";
      } else {
        form = forms[rng() % forms.size()];
        tag = tags[rng() % tags.size()];
      }
      sentence.eojeols.push_back({form, parse_analysis(form + "/" + tag)});
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

}  // namespace kseg::testing
