#include <doctest.h>

#include <map>

#include "fixtures.h"
#include "kseg/corpus_io.h"
#include "kseg/errors.h"
#include "kseg/text.h"

using namespace kseg;
using kseg::testing::read_data;
using kseg::testing::ungaro_sentence;

namespace {

// Rows of a single-sentence CoNLL-U text keyed by id.
std::map<std::string, std::vector<std::string>> RowsById(const std::string& conllu) {
  std::map<std::string, std::vector<std::string>> out;
  for (std::string_view line : split(conllu, '\n')) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    for (auto c : split(line, '\t')) cols.emplace_back(c);
    out[cols[0]] = cols;
  }
  return out;
}

std::string Cells(const std::vector<std::string>& row, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n && i < row.size(); ++i) out += (i ? " " : "") + row[i];
  return out;
}

std::string Conllu(int level) {
  return write_conllu(segment_sentence(ungaro_sentence(), Level(level)));
}

}  // namespace

TEST_CASE("read morph corpus") {
  const auto s = read_morph_corpus("BTAA0001-00000017\t웅가로가\t웅가로/NNP+가/JKS\n");
  REQUIRE(s.size() == 1);
  REQUIRE(s[0].eojeols.size() == 1);
  CHECK(s[0].eojeols[0].morphemes.size() == 2);
  CHECK(s[0].id == "BTAA0001-00000017");

  const auto sense =
      read_morph_corpus("BSAA0001-00000013\t세계적인\t세계__02/NNG+적/XSN+이/VCP+ㄴ/ETM\n");
  REQUIRE(sense[0].eojeols[0].morphemes.size() == 4);
  CHECK(sense[0].eojeols[0].morphemes[0].sense == "02");
  CHECK(sense[0].eojeols[0].morphemes[0].form == "세계");
}

TEST_CASE("morph corpus errors carry line numbers") {
  try {
    read_morph_corpus("a\t가\t가/NNG\nx\ty\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    read_morph_corpus("a\t가\t가/XYZ\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(read_morph_corpus("a\t가\t/NNG\n"), ParseError);
}

TEST_CASE("sentence boundaries") {
  const std::string text =
      "A-1\t가\t가/NNG\nA-2\t나\t나/NNG\nB-1\t다\t다/NNG\n";
  CHECK(read_morph_corpus(text).size() == 1);
  MorphReadOptions by_id;
  by_id.boundary = SentenceBoundary::kIdPrefix;
  CHECK(read_morph_corpus(text, by_id).size() == 2);
}

TEST_CASE("morph corpus round trip") {
  const std::string text = read_data("ungaro_morph.txt");
  const auto sentences = read_morph_corpus(text);
  CHECK(write_morph_corpus(sentences) == text);
  const auto mini = kseg::testing::mini_corpus();
  CHECK(read_morph_corpus(write_morph_corpus(mini)) == mini);
  const auto random = kseg::testing::random_sentences(200, 11);
  CHECK(read_morph_corpus(write_morph_corpus(random)) == random);

  const std::string sense = "BSAA0001-00000013\t세계적인\t세계__02/NNG+적/XSN+이/VCP+ㄴ/ETM\n";
  CHECK(write_morph_corpus(read_morph_corpus(sense)) == sense);
}

TEST_CASE("reference conllu rows level 1") {
  const auto rows = RowsById(Conllu(1));
  const std::string segye = Cells(rows.at("2"), 5);
  CHECK((segye == "2 세계적인 세계+적+이+ㄴ NOUN NNG+XSN+VCP+ETM" ||
         segye == "2 세계적인 세계+적+이+ㄴ VERB NNG+XSN+VCP+ETM"));
  CHECK(Cells(rows.at("6"), 5) == "6 웅가로가 웅가로+가 PROPN NNP+JKS");
  CHECK(Cells(rows.at("11"), 5) == "11 나섰다. 나서+었+다+. VERB VV+EP+EF+SF");
  CHECK(rows.size() == 11);
}

TEST_CASE("reference conllu rows level 2") {
  const auto rows = RowsById(Conllu(2));
  const std::string segye = Cells(rows.at("2"), 5);
  CHECK((segye == "2 세계적인 세계+적+이+ㄴ NOUN NNG+XSN+VCP+ETM" ||
         segye == "2 세계적인 세계+적+이+ㄴ VERB NNG+XSN+VCP+ETM"));
  CHECK(Cells(rows.at("6"), 5) == "6 웅가로가 웅가로+가 PROPN NNP+JKS");
  CHECK(Cells(rows.at("11"), 5) == "11 나섰다 나서+었+다 VERB VV+EP+EF");
  CHECK(Cells(rows.at("12"), 5) == "12 . . PUNCT SF");
  CHECK(rows.count("11-12") == 0);
  CHECK(rows.size() == 12);
}

TEST_CASE("reference conllu rows level 3") {
  const auto rows = RowsById(Conllu(3));
  CHECK(Cells(rows.at("7-8"), 4) == "7-8 웅가로가 _ _");
  CHECK(Cells(rows.at("7"), 5) == "7 웅가로 웅가로 PROPN NNP");
  CHECK(Cells(rows.at("8"), 5) == "8 가 가 ADP JKS");
  CHECK(Cells(rows.at("14"), 5) == "14 나섰다 나서+었+다 VERB VV+EP+EF");
  CHECK(Cells(rows.at("15"), 5) == "15 . . PUNCT SF");
}

TEST_CASE("reference conllu rows level 4") {
  const auto rows = RowsById(Conllu(4));
  CHECK(Cells(rows.at("3-4"), 4) == "3-4 세계적인 _ _");
  CHECK(Cells(rows.at("3"), 5) == "3 세계적이 세계+적+이 VERB NNG+XSN+VCP");
  CHECK(Cells(rows.at("4"), 5) == "4 ㄴ 은 PART ETM");
  CHECK(Cells(rows.at("8-9"), 4) == "8-9 웅가로가 _ _");
  CHECK(Cells(rows.at("15-17"), 4) == "15-17 나섰다 _ _");
  CHECK(Cells(rows.at("15"), 5) == "15 나서 나서 VERB VV");
  CHECK(Cells(rows.at("16"), 5) == "16 었 었 PART EP");
  CHECK(Cells(rows.at("17"), 5) == "17 다 다 PART EF");
  CHECK(Cells(rows.at("18"), 5) == "18 . . PUNCT SF");
}

TEST_CASE("reference conllu rows level 5") {
  const auto rows = RowsById(Conllu(5));
  CHECK(Cells(rows.at("3-6"), 4) == "3-6 세계적인 _ _");
  CHECK(Cells(rows.at("3"), 5) == "3 세계 세계 NOUN NNG");
  CHECK(Cells(rows.at("4"), 5) == "4 적 적 PART XSN");
  CHECK(Cells(rows.at("5"), 5) == "5 이 이 VERB VCP");
  CHECK(Cells(rows.at("6"), 5) == "6 ㄴ 은 PART ETM");
  CHECK(Cells(rows.at("10-11"), 4) == "10-11 웅가로가 _ _");
  CHECK(Cells(rows.at("10"), 5) == "10 웅가로 웅가로 PROPN NNP");
  CHECK(Cells(rows.at("11"), 5) == "11 가 가 ADP JKS");
  CHECK(Cells(rows.at("18-20"), 4) == "18-20 나섰다 _ _");
  CHECK(Cells(rows.at("18"), 5) == "18 나서 나서 VERB VV");
  CHECK(Cells(rows.at("19"), 5) == "19 었 었 PART EP");
  CHECK(Cells(rows.at("20"), 5) == "20 다 다 PART EF");
  CHECK(Cells(rows.at("21"), 5) == "21 . . PUNCT SF");
}

TEST_CASE("conllu layout") {
  const std::string text = Conllu(4);
  for (std::string_view line : split(text, '\n')) {
    if (line.empty() || line[0] == '#') continue;
    CHECK(split(line, '\t').size() == 10);
  }
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.substr(text.size() - 2) == "\n\n");
}

TEST_CASE("lemma table for lone jamo") {
  const Morpheme n{"ㄴ", SejongTag::ETM, std::nullopt};
  const Morpheme r{"ㄹ", SejongTag::ETM, std::nullopt};
  const Morpheme m{"ㅁ", SejongTag::ETN, std::nullopt};
  const Morpheme b{"ㅂ", SejongTag::EF, std::nullopt};
  CHECK(lemma_for_group(std::span(&n, 1), "ㄴ") == "은");
  CHECK(lemma_for_group(std::span(&r, 1), "ㄹ") == "을");
  CHECK(lemma_for_group(std::span(&m, 1), "ㅁ") == "음");
  CHECK(lemma_for_group(std::span(&b, 1), "ㅂ") == "습");
}

TEST_CASE("upos mapping") {
  auto upos = [](const std::string& analysis) {
    return upos_for_group(parse_analysis(analysis));
  };
  CHECK(upos("의상/NNG") == "NOUN");
  CHECK(upos("그/NP") == "PRON");
  CHECK(upos("새/MM") == "DET");
  CHECK(upos("잘/MAG") == "ADV");
  CHECK(upos("아/IC") == "INTJ");
  CHECK(upos("3/SN") == "NUM");
  CHECK(upos("ABC/SL") == "X");
  CHECK(upos("%/SW") == "SYM");
  CHECK(upos(",/SP") == "PUNCT");
  CHECK(upos("가/JKS") == "ADP");
  CHECK(upos("다/EF") == "PART");
  CHECK(upos("장식/NNG+용/XSN") == "NOUN");
  CHECK(upos("웅가로/NNP+가/JKS") == "PROPN");
}

TEST_CASE("read conllu") {
  const auto l3 = read_conllu(Conllu(3));
  REQUIRE(l3.size() == 1);
  CHECK(l3[0].tokens.size() == 15);
  CHECK(l3[0].level == Level(3));
  CHECK(l3[0].source.eojeols.size() == 11);
  CHECK(level1_analyses(l3[0].source) == level1_analyses(ungaro_sentence()));
}

TEST_CASE("conllu round trips") {
  std::vector<Sentence> corpus = kseg::testing::mini_corpus();
  const auto random = kseg::testing::random_sentences(300, 5);
  corpus.insert(corpus.end(), random.begin(), random.end());
  corpus.push_back(ungaro_sentence());
  for (const Level& k : all_levels()) {
    std::vector<SegmentedSentence> segmented;
    for (const auto& s : corpus) segmented.push_back(segment_sentence(s, k));
    const std::string text = write_conllu(segmented);
    const auto back = read_conllu(text);
    REQUIRE(back.size() == segmented.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].tokens == segmented[i].tokens);
      CHECK(level1_analyses(back[i].source) == level1_analyses(segmented[i].source));
    }
    CHECK(write_conllu(back) == text);
  }
}

TEST_CASE("conllu without text comments") {
  const std::string text =
      "1-2\t웅가로가\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\t웅가로\t웅가로\tPROPN\tNNP\t_\t_\t_\t_\t_\n"
      "2\t가\t가\tADP\tJKS\t_\t_\t_\t_\t_\n"
      "3\t나섰다\t나서+었+다\tVERB\tVV+EP+EF\t_\t_\t_\t_\t_\n"
      "4\t.\t.\tPUNCT\tSF\t_\t_\t_\t_\t_\n\n";
  const auto s = read_conllu(text, Level(3));
  REQUIRE(s.size() == 1);
  CHECK(s[0].level == Level(3));
  REQUIRE(s[0].source.eojeols.size() == 2);
  CHECK(s[0].source.eojeols[1].surface == "나섰다.");
  CHECK(level1_analyses(s[0].source)[1].analysis == "나서/VV+었/EP+다/EF+./SF");
}

TEST_CASE("conllu errors") {
  const std::string overlap =
      "3-5\tx\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "4-6\ty\t_\t_\t_\t_\t_\t_\t_\t_\n";
  CHECK_THROWS_AS(read_conllu("1\t가\t가\tNOUN\tNNG\t_\t_\t_\t_\t_\n" + overlap), ParseError);
  CHECK_THROWS_AS(read_conllu("1\t가\t가\tNOUN\tNNG\t_\t_\t_\t_\t_\n"
                              "3\t나\t나\tNOUN\tNNG\t_\t_\t_\t_\t_\n"),
                  ParseError);
  CHECK_THROWS_AS(read_conllu("1\t가\t가\tNOUN\tXYZ\t_\t_\t_\t_\t_\n"), ParseError);
}

TEST_CASE("read treebank") {
  const auto t = read_treebank("(NP-SBJ 웅가로/NNP+가/JKS)");
  REQUIRE(t.size() == 1);
  REQUIRE(t[0].children.size() == 1);
  CHECK(t[0].children[0].is_preterminal());
  CHECK(t[0].children[0].label == "NNP+JKS");
  CHECK(tree_leaves(t[0])[0]->token.form == "웅가로가");

  // Without a raw line the surface is spelled from the morphemes.
  const auto vp = read_treebank("(VP 나서/VV+었/EP+다/EF+./SF)");
  CHECK(vp[0].children[0].label == "VV+EP+EF+SF");
  CHECK(tree_leaves(vp[0])[0]->token.form == "나서었다.");
  const auto raw = read_treebank("; 나섰다.\n(VP 나서/VV+었/EP+다/EF+./SF)");
  CHECK(tree_leaves(raw[0])[0]->token.form == "나섰다.");

  const auto np = read_treebank("(NP 의상/NNG)");
  CHECK(write_bracketed(np[0]) == "(NP (NNG 의상))");
  CHECK(write_bracketed(np[0], BracketStyle::kSejong) == "(NP 의상/NNG)");
}

TEST_CASE("treebank errors") {
  CHECK_THROWS_WITH_AS(read_treebank("(NP"), doctest::Contains("unbalanced"), ParseError);
  CHECK_THROWS_AS(read_treebank("(NP ())"), ParseError);
  CHECK_THROWS_AS(read_treebank("(S 가/XYZ+나)"), ParseError);
  try {
    read_treebank("(S\n  (NP 의상/NNG)\n  (VP ))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("reference tree fragments") {
  const auto trees = read_treebank(read_data("ungaro_tree.txt"));
  REQUIRE(trees.size() == 1);
  auto at = [&](int k) { return write_bracketed(convert_tree(trees[0], Level(k))); };
  const std::string a = at(1);
  CHECK(a.find("(VNP-MOD (NNG+XSN+VCP+ETM 세계적인))") != std::string::npos);
  CHECK(a.find("(NP-SBJ (NP (NNP 엠마누엘)) (NP-SBJ (NNP+JKS 웅가로가)))") != std::string::npos);
  CHECK(a.find("(VP (VV+EP+EF+SF 나섰다.))") != std::string::npos);
  CHECK(a.rfind("(S (NP-SBJ (NP (NP-MOD ", 0) == 0);

  const std::string b = at(2);
  CHECK(b.find("(VNP-MOD (NNG+XSN+VCP+ETM 세계적인))") != std::string::npos);
  CHECK(b.find("(NP-SBJ (NNP+JKS 웅가로가))") != std::string::npos);
  CHECK(b.find("(VP (VV+EP+EF 나섰다) (SF .))))") != std::string::npos);

  const std::string c = at(3);
  CHECK(c.find("(VNP-MOD (NNG+XSN+VCP+ETM 세계적인))") != std::string::npos);
  CHECK(c.find("(NP-SBJ (NNP 웅가로) (JKS 가))") != std::string::npos);
  CHECK(c.find("(VP (VV+EP+EF 나섰다) (SF .))") != std::string::npos);

  const std::string d = at(4);
  CHECK(d.find("(VNP-MOD (NNG+XSN+VCP 세계적이) (ETM ㄴ))") != std::string::npos);
  CHECK(d.find("(NP-SBJ (NNP 웅가로) (JKS 가))") != std::string::npos);
  CHECK(d.find("(VP (VV 나서) (EP 었) (EF 다) (SF .))") != std::string::npos);

  const std::string e = at(5);
  CHECK(e.find("(VNP-MOD (NNG 세계) (XSN 적) (VCP 이) (ETM ㄴ))") != std::string::npos);
  CHECK(e.find("(NP-SBJ (NNP 웅가로) (JKS 가))") != std::string::npos);
  CHECK(e.find("(VP (VV 나서) (EP 었) (EF 다) (SF .))") != std::string::npos);

  CHECK(write_bracketed(expand_tree_to_level5(trees[0])) == e);
}

TEST_CASE("treebank round trips") {
  const auto trees = kseg::testing::mini_trees();
  REQUIRE(trees.size() == 200);
  const std::string sejong = write_treebank(trees, BracketStyle::kSejong);
  CHECK(read_treebank(sejong) == trees);
  CHECK(write_treebank(read_treebank(sejong), BracketStyle::kSejong) == sejong);
  for (const Level& k : all_levels()) {
    std::vector<SyntaxTree> converted;
    for (const auto& t : trees) converted.push_back(convert_tree(t, k));
    const std::string penn = write_treebank(converted);
    CHECK(write_treebank(read_treebank(penn)) == penn);
  }
}

TEST_CASE("escaped parentheses in leaves") {
  const auto t = read_treebank("(NP \\(/SS+가/NNG+\\)/SS)");
  REQUIRE(t.size() == 1);
  const auto leaves = tree_leaves(t[0]);
  REQUIRE(leaves[0]->eojeol.has_value());
  CHECK(leaves[0]->eojeol->morphemes[0].form == "(");
  CHECK(leaves[0]->token.form == "(가)");
  CHECK(read_treebank(write_treebank(t, BracketStyle::kSejong)) == t);
  const auto l5 = convert_tree(t[0], Level(5));
  CHECK(read_treebank(write_bracketed(l5))[0].children.size() == 3);
}

TEST_CASE("token streams") {
  const Sentence s = ungaro_sentence();
  CHECK(write_tokens(segment_sentence(s, Level(1))) ==
        "프랑스의 세계적인 의상 디자이너 엠마누엘 웅가로가 실내 장식용 직물 디자이너로 "
        "나섰다.\n");
  CHECK(write_tokens(segment_sentence(s, Level(4))) ==
        "프랑스 의 세계적이 ㄴ 의상 디자이너 엠마누엘 웅가로 가 실내 장식용 직물 디자이너 로 "
        "나서 었 다 .\n");
  CHECK(write_tokens(segment_sentence(s, Level(5))) ==
        "프랑스 의 세계 적 이 ㄴ 의상 디자이너 엠마누엘 웅가로 가 실내 장식 용 직물 디자이너 "
        "로 나서 었 다 .\n");
  for (const Level& k : all_levels()) {
    std::vector<SegmentedSentence> segmented;
    for (const auto& m : kseg::testing::mini_corpus()) segmented.push_back(segment_sentence(m, k));
    const std::string text = write_tokens(segmented);
    const auto back = read_tokens(text);
    REQUIRE(back.size() == segmented.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      std::vector<std::string> forms;
      for (const auto& t : segmented[i].tokens) forms.push_back(t.form);
      CHECK(back[i] == forms);
    }
  }
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(read_file("/nonexistent/kseg/file"), Error);
}
