#ifndef KSEG_CORPUS_IO_H_
#define KSEG_CORPUS_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kseg/core_model.h"
#include "kseg/granularity.h"

namespace kseg {

// Sejong morphologically analyzed corpus: `id<TAB>surface<TAB>analysis`.

enum class SentenceBoundary {
  kBlankLine,  // sentences separated by blank lines
  kIdPrefix,   // new sentence whenever the id before the last '-' changes
};

struct MorphReadOptions {
  SentenceBoundary boundary = SentenceBoundary::kBlankLine;
};

std::vector<Sentence> read_morph_corpus(std::string_view text,
                                        const MorphReadOptions& options = {});
std::string write_morph_corpus(const std::vector<Sentence>& sentences);

// Bracketed treebanks. The reader accepts Sejong leaves (`form/TAG+form/TAG`
// directly under a phrase) and Penn preterminals (`(TAG form)`). A line
// starting with ';' before a tree gives its raw sentence, which supplies the
// eojeol surfaces of Sejong leaves.
std::vector<SyntaxTree> read_treebank(std::string_view text);

enum class BracketStyle {
  kPenn,    // (NNP+JKS 웅가로가)
  kSejong,  // (NP-SBJ 웅가로/NNP+가/JKS); needs whole-eojeol leaves
};

std::string write_bracketed(const SyntaxTree& tree, BracketStyle style = BracketStyle::kPenn);

// One tree per line. Sejong style precedes each tree with a "; text" line.
std::string write_treebank(const std::vector<SyntaxTree>& trees,
                           BracketStyle style = BracketStyle::kPenn);

// CoNLL-U.

std::string upos_for_group(std::span<const Morpheme> group);
std::string lemma_for_group(std::span<const Morpheme> group, std::string_view form);

std::string write_conllu(const SegmentedSentence& segmented);
std::string write_conllu(const std::vector<SegmentedSentence>& sentences);

// `level` is used when the text carries no "# level" comment; defaults to 5.
std::vector<SegmentedSentence> read_conllu(std::string_view text,
                                           std::optional<Level> level = std::nullopt);

// Plain token streams for MT: rendered forms, space-joined, one per line.
std::string write_tokens(const SegmentedSentence& segmented);
std::string write_tokens(const std::vector<SegmentedSentence>& sentences);
std::vector<std::vector<std::string>> read_tokens(std::string_view text);

// Whole-file helpers; throw Error when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace kseg

#endif  // KSEG_CORPUS_IO_H_
