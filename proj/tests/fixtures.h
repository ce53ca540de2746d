#ifndef KSEG_TESTS_FIXTURES_H_
#define KSEG_TESTS_FIXTURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "kseg/core_model.h"
#include "kseg/granularity.h"

namespace kseg::testing {

std::string data_path(const std::string& name);
std::string read_data(const std::string& name);

// The bundled 11-eojeol reference sentence.
Sentence ungaro_sentence();
std::vector<Sentence> mini_corpus();
std::vector<SyntaxTree> mini_trees();

// Random well-formed sentences. Surfaces concatenate morpheme forms, except
// that lone-jamo endings fuse into a preceding open syllable.
std::vector<Sentence> random_sentences(std::size_t n, std::uint32_t seed);

// Random phrase structure over the eojeols of `sentence`; leaves carry
// provenance.
SyntaxTree random_tree(const Sentence& sentence, std::uint32_t seed);

// Single-morpheme eojeols over three tags (JKS, NNG, VV) and the forms 가, 나
// and 다; 다 is only ever JKS.
std::vector<Sentence> toy_tagger_corpus();

// Reference counts written by make_mini_corpus.py.
struct LevelCounts {
  std::size_t tokens = 0;
  std::size_t complex = 0;
  std::size_t tags = 0;
  std::size_t vocabulary = 0;
};
struct ReferenceCounts {
  std::size_t sentences = 0;
  std::size_t eojeols = 0;
  std::size_t dictionary = 0;
  LevelCounts level[6];
};
ReferenceCounts mini_counts();

}  // namespace kseg::testing

#endif  // KSEG_TESTS_FIXTURES_H_
