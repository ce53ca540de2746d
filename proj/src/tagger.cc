#include "kseg/tagger.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "kseg/errors.h"
#include "kseg/text.h"

namespace kseg {

namespace {

constexpr std::string_view kMagic = "kseg-tagger 1";

std::vector<Morpheme> StripSenses(std::vector<Morpheme> morphemes) {
  for (auto& m : morphemes) m.sense.reset();
  return morphemes;
}

std::string FinalSyllable(const std::string& form) {
  const std::u32string u = to_u32(form);
  return u.empty() ? std::string() : to_utf8(u.back());
}

bool IsAtomic(std::string_view tag) { return tag.find('+') == std::string_view::npos; }

std::string JoinEscaped(const std::vector<std::string>& forms) {
  std::string out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) out += '+';
    out += escape_form(forms[i]);
  }
  return out;
}

std::vector<std::string> SplitEscaped(std::string_view text) {
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) {
      out.back() += text[++i];
    } else if (text[i] == '+') {
      out.emplace_back();
    } else {
      out.back() += text[i];
    }
  }
  return out;
}

std::size_t ParseCount(std::string_view text, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad count '" + std::string(text) + "'", line);
  }
  return value;
}

}  // namespace

TaggerModel::TaggerModel(Level level, double smoothing_k)
    : level_(level), smoothing_k_(smoothing_k) {
  if (!(smoothing_k > 0.0) || !std::isfinite(smoothing_k)) {
    throw DomainError("smoothing constant must be positive");
  }
}

bool TaggerModel::knows_form(const std::string& form) const {
  return form_tags_.count(form) > 0;
}

std::vector<std::string> TaggerModel::tags_for(const std::string& form) const {
  std::vector<std::string> out;
  const auto it = form_tags_.find(form);
  if (it == form_tags_.end()) return out;
  for (const auto& [tag, n] : it->second) out.push_back(tag);
  return out;
}

const EojeolAnalysis* TaggerModel::lookup(const std::string& surface) const {
  const auto it = best_.find(surface);
  return it == best_.end() ? nullptr : &it->second;
}

double TaggerModel::transition(std::string_view prev, std::string_view next) const {
  const double outcomes = static_cast<double>(tags_.size() + 1);
  std::size_t joint = 0;
  const auto it = transitions_.find({std::string(prev), std::string(next)});
  if (it != transitions_.end()) joint = it->second;
  std::size_t total = 0;
  const auto ct = context_totals_.find(std::string(prev));
  if (ct != context_totals_.end()) total = ct->second;
  return (static_cast<double>(joint) + smoothing_k_) /
         (static_cast<double>(total) + smoothing_k_ * outcomes);
}

double TaggerModel::log_transition(std::string_view prev, std::string_view next) const {
  return std::log(transition(prev, next));
}

double TaggerModel::emission(const std::string& tag, const std::string& form) const {
  if (!knows_form(form)) return unknown_emission(tag, form);
  const double outcomes = static_cast<double>(form_counts_.size() + 1);
  std::size_t joint = 0;
  const auto it = emissions_.find({tag, form});
  if (it != emissions_.end()) joint = it->second.count;
  std::size_t total = 0;
  const auto tt = tag_totals_.find(tag);
  if (tt != tag_totals_.end()) total = tt->second;
  return (static_cast<double>(joint) + smoothing_k_) /
         (static_cast<double>(total) + smoothing_k_ * outcomes);
}

std::vector<std::string> TaggerModel::vocabulary() const {
  std::vector<std::string> out;
  for (const auto& [form, n] : form_counts_) out.push_back(form);
  return out;
}

double TaggerModel::unknown_form_mass(const std::string& tag) const {
  std::size_t total = 0;
  const auto tt = tag_totals_.find(tag);
  if (tt != tag_totals_.end()) total = tt->second;
  return smoothing_k_ / (static_cast<double>(total) +
                         smoothing_k_ * static_cast<double>(form_counts_.size() + 1));
}

double TaggerModel::log_emission(const std::string& tag, const std::string& form) const {
  return std::log(emission(tag, form));
}

double TaggerModel::unknown_emission(const std::string& tag, const std::string& form) const {
  const auto& candidates = atomic_tags_.empty() ? tags_ : atomic_tags_;
  if (candidates.empty()) return 1.0;
  const double n = static_cast<double>(candidates.size());
  const auto it = suffixes_.find(FinalSyllable(form));
  if (it == suffixes_.end()) return 1.0 / n;
  std::size_t total = 0;
  for (const auto& [t, c] : it->second) total += c;
  std::size_t joint = 0;
  const auto jt = it->second.find(tag);
  if (jt != it->second.end()) joint = jt->second;
  return (static_cast<double>(joint) + smoothing_k_) /
         (static_cast<double>(total) + smoothing_k_ * n);
}

std::vector<Morpheme> TaggerModel::decompose(const std::string& form,
                                             const std::string& tag) const {
  const auto components = parse_composite_tag(tag);
  const auto it = emissions_.find({tag, form});
  if (it != emissions_.end() && it->second.morpheme_forms.size() == components.size()) {
    std::vector<Morpheme> out;
    for (std::size_t i = 0; i < components.size(); ++i) {
      out.push_back({it->second.morpheme_forms[i], components[i], std::nullopt});
    }
    return out;
  }
  if (components.size() != 1) {
    throw StructuralError("no decomposition of '" + form + "' as " + tag);
  }
  return {{form, components.front(), std::nullopt}};
}

std::vector<std::string> TaggerModel::transition_contexts() const {
  std::vector<std::string> out;
  if (context_totals_.count(std::string(kBos))) out.emplace_back(kBos);
  for (const auto& [ctx, n] : context_totals_) {
    if (ctx != kBos) out.push_back(ctx);
  }
  return out;
}

void TaggerModel::AddToken(const std::string& prev, const std::string& tag,
                           const std::string& form, std::span<const Morpheme> morphemes) {
  ++transitions_[{prev, tag}];
  auto& e = emissions_[{tag, form}];
  if (e.count == 0) {
    for (const auto& m : morphemes) e.morpheme_forms.push_back(m.form);
  }
  ++e.count;
}

void TaggerModel::AddEojeol(const EojeolAnalysis& eojeol) {
  auto& entries = dictionary_[eojeol.surface];
  const auto morphemes = StripSenses(eojeol.morphemes);
  for (auto& entry : entries) {
    if (entry.morphemes == morphemes) {
      ++entry.count;
      return;
    }
  }
  entries.push_back({morphemes, 1});
}

void TaggerModel::Finalize() {
  best_.clear();
  for (const auto& [surface, entries] : dictionary_) {
    const AnalysisCount* best = nullptr;
    for (const auto& entry : entries) {
      if (!best || entry.count > best->count) best = &entry;
    }
    best_[surface] = EojeolAnalysis{surface, best->morphemes};
  }

  context_totals_.clear();
  std::set<std::string> tags;
  for (const auto& [key, n] : transitions_) {
    context_totals_[key.first] += n;
    if (key.first != kBos) tags.insert(key.first);
    if (key.second != kEos) tags.insert(key.second);
  }

  tag_totals_.clear();
  form_tags_.clear();
  form_counts_.clear();
  suffixes_.clear();
  for (const auto& [key, e] : emissions_) {
    const auto& [tag, form] = key;
    tags.insert(tag);
    tag_totals_[tag] += e.count;
    form_tags_[form][tag] += e.count;
    form_counts_[form] += e.count;
    if (IsAtomic(tag)) suffixes_[FinalSyllable(form)][tag] += e.count;
  }
  tags_.assign(tags.begin(), tags.end());
  atomic_tags_.clear();
  for (const auto& t : tags_) {
    if (IsAtomic(t)) atomic_tags_.push_back(t);
  }
}

TaggerModel train(const std::vector<Sentence>& corpus, Level level, double smoothing_k) {
  if (corpus.empty()) throw Error("empty training corpus");
  TaggerModel model(level, smoothing_k);
  const std::string bos(kBos);
  for (const auto& sentence : corpus) {
    for (const auto& eojeol : sentence.eojeols) model.AddEojeol(eojeol);
    const SegmentedSentence seg = segment_sentence(sentence, level);
    std::string prev = bos;
    for (const auto& token : seg.tokens) {
      const auto& morphemes = sentence.eojeols[token.eojeol_index].morphemes;
      model.AddToken(prev, token.composite_tag, token.form,
                     std::span<const Morpheme>(morphemes.data() + token.range.begin,
                                               token.range.size()));
      prev = token.composite_tag;
    }
    ++model.transitions_[{prev, std::string(kEos)}];
  }
  model.Finalize();
  return model;
}

namespace {

std::vector<std::string> Candidates(const TaggerModel& model, const std::string& form) {
  if (model.knows_form(form)) return model.tags_for(form);
  if (!model.atomic_tags().empty()) return model.atomic_tags();
  return {"NA"};
}

}  // namespace

std::vector<std::string> viterbi(const TaggerModel& model,
                                 const std::vector<std::string>& forms) {
  if (forms.empty()) return {};
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  std::vector<std::vector<std::string>> cands;
  for (const auto& f : forms) cands.push_back(Candidates(model, f));

  std::vector<std::vector<double>> score(forms.size());
  std::vector<std::vector<std::size_t>> back(forms.size());
  for (std::size_t j = 0; j < cands[0].size(); ++j) {
    score[0].push_back(model.log_transition(kBos, cands[0][j]) +
                       model.log_emission(cands[0][j], forms[0]));
    back[0].push_back(0);
  }
  for (std::size_t i = 1; i < forms.size(); ++i) {
    for (const auto& tag : cands[i]) {
      const double emit = model.log_emission(tag, forms[i]);
      double best = kNegInf;
      std::size_t arg = 0;
      for (std::size_t p = 0; p < cands[i - 1].size(); ++p) {
        const double s = score[i - 1][p] + model.log_transition(cands[i - 1][p], tag);
        if (s > best) {
          best = s;
          arg = p;
        }
      }
      score[i].push_back(best + emit);
      back[i].push_back(arg);
    }
  }
  const std::size_t last = forms.size() - 1;
  double best = kNegInf;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < cands[last].size(); ++j) {
    const double s = score[last][j] + model.log_transition(cands[last][j], kEos);
    if (s > best) {
      best = s;
      arg = j;
    }
  }
  std::vector<std::string> out(forms.size());
  for (std::size_t i = forms.size(); i-- > 0;) {
    out[i] = cands[i][arg];
    arg = back[i][arg];
  }
  return out;
}

double sequence_log_score(const TaggerModel& model, const std::vector<std::string>& forms,
                          const std::vector<std::string>& tags) {
  if (forms.size() != tags.size()) throw AlignmentError("forms and tags differ in length");
  double s = 0.0;
  std::string prev(kBos);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    s += model.log_transition(prev, tags[i]) + model.log_emission(tags[i], forms[i]);
    prev = tags[i];
  }
  return s + model.log_transition(prev, kEos);
}

SegmentedSentence tag_segmented(const TaggerModel& model,
                                const std::vector<std::string>& surfaces,
                                const std::vector<std::vector<std::string>>& token_forms,
                                std::string id) {
  if (surfaces.size() != token_forms.size()) {
    throw AlignmentError("surfaces and token lists differ in length");
  }
  std::vector<std::string> flat;
  for (const auto& forms : token_forms) {
    if (forms.empty()) throw StructuralError("eojeol without tokens");
    flat.insert(flat.end(), forms.begin(), forms.end());
  }
  const auto tags = viterbi(model, flat);

  SegmentedSentence out;
  out.level = model.level();
  out.source.id = std::move(id);
  std::size_t k = 0;
  for (std::size_t e = 0; e < surfaces.size(); ++e) {
    EojeolAnalysis eojeol{surfaces[e], {}};
    for (const auto& form : token_forms[e]) {
      const auto morphemes = model.decompose(form, tags[k]);
      const std::size_t begin = eojeol.morphemes.size();
      eojeol.morphemes.insert(eojeol.morphemes.end(), morphemes.begin(), morphemes.end());
      out.tokens.push_back({e, {begin, eojeol.morphemes.size()}, form, tags[k]});
      ++k;
    }
    out.source.eojeols.push_back(std::move(eojeol));
  }
  return out;
}

SegmentedSentence analyze(const TaggerModel& model, const std::vector<std::string>& eojeols,
                          std::string id) {
  std::vector<std::vector<std::string>> token_forms;
  for (const auto& surface : eojeols) {
    if (const EojeolAnalysis* hit = model.lookup(surface)) {
      token_forms.push_back(render_groups(*hit, partition_eojeol(*hit, model.level())));
      continue;
    }
    std::vector<std::string> forms;
    std::u32string rest = to_u32(surface);
    std::vector<std::string> trailing;
    if (model.level().value() >= 2) {
      while (rest.size() > 1 && is_symbol_char(rest.back())) {
        trailing.push_back(to_utf8(rest.back()));
        rest.pop_back();
      }
    }
    forms.push_back(to_utf8(rest));
    forms.insert(forms.end(), trailing.rbegin(), trailing.rend());
    token_forms.push_back(std::move(forms));
  }
  return tag_segmented(model, eojeols, token_forms, std::move(id));
}

PipelineReport evaluate_pipeline(const TaggerModel& model,
                                 const std::vector<std::vector<std::string>>& raw,
                                 const std::vector<Sentence>& gold, SegmentationSource source) {
  if (gold.empty()) throw Error("empty test set");
  if (raw.size() != gold.size()) {
    throw AlignmentError("raw and gold sentence counts differ: " + std::to_string(raw.size()) +
                         " vs " + std::to_string(gold.size()));
  }
  std::vector<SegmentedSentence> gold_seg;
  std::vector<SegmentedSentence> pred_seg;
  std::vector<std::vector<MergedEojeol>> merged;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    gold_seg.push_back(segment_sentence(gold[s], model.level()));
    if (source == SegmentationSource::kGold) {
      std::vector<std::vector<std::string>> forms(gold[s].eojeols.size());
      for (const auto& token : gold_seg.back().tokens) {
        forms[token.eojeol_index].push_back(token.form);
      }
      pred_seg.push_back(tag_segmented(model, raw[s], forms, gold[s].id));
    } else {
      pred_seg.push_back(analyze(model, raw[s], gold[s].id));
    }
    merged.push_back(merge_to_level1(pred_seg.back()));
  }
  return {segmentation_prf(gold_seg, pred_seg), pos_accuracy(gold, merged)};
}

std::string TaggerModel::serialize() const {
  std::string out(kMagic);
  out += "\nlevel\t" + std::to_string(level_.value()) + "\n";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, smoothing_k_);
  out += "smoothing\t" + std::string(buf, res.ptr) + "\n";
  for (const auto& [surface, entries] : dictionary_) {
    for (const auto& entry : entries) {
      out += "dict\t" + surface + "\t" + std::to_string(entry.count) + "\t" +
             format_analysis(entry.morphemes) + "\n";
    }
  }
  for (const auto& [key, n] : transitions_) {
    out += "trans\t" + key.first + "\t" + key.second + "\t" + std::to_string(n) + "\n";
  }
  for (const auto& [key, e] : emissions_) {
    out += "emit\t" + key.first + "\t" + key.second + "\t" + std::to_string(e.count) + "\t" +
           JoinEscaped(e.morpheme_forms) + "\n";
  }
  return out;
}

TaggerModel TaggerModel::deserialize(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || lines[0] != kMagic) throw ParseError("not a tagger model file", 1);
  std::optional<int> level;
  std::optional<double> k;
  std::size_t i = 1;
  for (; i < lines.size() && (!level || !k); ++i) {
    const auto f = split(lines[i], '\t');
    if (f.size() != 2) throw ParseError("expected a header field", i + 1);
    if (f[0] == "level") {
      level = static_cast<int>(ParseCount(f[1], i + 1));
    } else if (f[0] == "smoothing") {
      double v = 0;
      const auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), v);
      if (ec != std::errc() || ptr != f[1].data() + f[1].size()) {
        throw ParseError("bad smoothing constant", i + 1);
      }
      k = v;
    } else {
      throw ParseError("unknown header field '" + std::string(f[0]) + "'", i + 1);
    }
  }
  if (!level || !k) throw ParseError("incomplete model header", i);
  TaggerModel model(Level(*level), *k);
  for (; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i], '\t');
    const std::size_t line = i + 1;
    if (f[0] == "dict" && f.size() == 4) {
      auto morphemes = parse_analysis(f[3]);
      model.dictionary_[std::string(f[1])].push_back(
          {std::move(morphemes), ParseCount(f[2], line)});
    } else if (f[0] == "trans" && f.size() == 4) {
      model.transitions_[{std::string(f[1]), std::string(f[2])}] = ParseCount(f[3], line);
    } else if (f[0] == "emit" && f.size() == 5) {
      auto& e = model.emissions_[{std::string(f[1]), std::string(f[2])}];
      e.count = ParseCount(f[3], line);
      e.morpheme_forms = SplitEscaped(f[4]);
    } else {
      throw ParseError("malformed model record", line);
    }
  }
  model.Finalize();
  return model;
}

}  // namespace kseg
