#include "chl/closure.hpp"

namespace chl {

void FiniteGroupClosure::insert(MatC m, Word w) {
  std::string key = m.canonical_key();
  if (index_.count(key)) return;
  index_.emplace(std::move(key), elements_.size());
  elements_.push_back(std::move(m));
  witness_.push_back(std::move(w));
}

FiniteGroupClosure FiniteGroupClosure::build(const std::vector<MatC>& gens, unsigned max_order) {
  if (max_order < 1) fail(errc::order_exceeds_bound, "max_order must be >= 1");
  FiniteGroupClosure g;
  g.gens_ = gens;
  if (gens.empty()) return g;
  const auto& f = gens[0].field();
  g.insert(MatC::identity(f, gens[0].rows()), Word{});

  size_t frontier_begin = 0;
  while (frontier_begin < g.elements_.size()) {
    size_t frontier_end = g.elements_.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      // copy: inserts may reallocate elements_
      const MatC base = g.elements_[i];
      const Word base_word = g.witness_[i];
      for (size_t j = 0; j < gens.size(); ++j) {
        MatC prod = base * gens[j];
        Word w = base_word;
        w.push_back(static_cast<int>(j) + 1);
        g.insert(std::move(prod), std::move(w));
        if (g.elements_.size() > max_order)
          fail(errc::order_exceeds_bound,
               "closure exceeds " + std::to_string(max_order) + " elements");
      }
    }
    frontier_begin = frontier_end;
  }
  return g;
}

std::optional<Word> FiniteGroupClosure::member(const MatC& a) const {
  auto it = index_.find(a.canonical_key());
  if (it == index_.end()) return std::nullopt;
  return witness_[it->second];
}

FiniteGroupClosure FiniteGroupClosure::center() const {
  FiniteGroupClosure z;
  z.gens_ = gens_;
  for (size_t i = 0; i < elements_.size(); ++i) {
    bool commutes = true;
    for (const auto& gmat : gens_)
      if (elements_[i] * gmat != gmat * elements_[i]) {
        commutes = false;
        break;
      }
    if (commutes) z.insert(elements_[i], witness_[i]);
  }
  return z;
}

} // namespace chl
