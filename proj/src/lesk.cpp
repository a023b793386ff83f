#include "distwsd/lesk.hpp"

#include <algorithm>

namespace distwsd {

std::string_view to_string(LeskAlgorithm alg) {
  switch (alg) {
    case LeskAlgorithm::Basic: return "basic";
    case LeskAlgorithm::Variant: return "variant";
    case LeskAlgorithm::ExtendedSimplified: return "extended";
  }
  return "basic";
}

std::optional<LeskAlgorithm> parse_lesk(std::string_view name) {
  const std::string lower = to_lower(name);
  if (lower == "basic") return LeskAlgorithm::Basic;
  if (lower == "variant") return LeskAlgorithm::Variant;
  if (lower == "extended") return LeskAlgorithm::ExtendedSimplified;
  return std::nullopt;
}

ContextBag make_context(const Sentence& s, const Token& target, bool pos_strict) {
  ContextBag ctx;
  for (const Token& t : s.tokens) {
    if (!t.key.pos.is_content() || t.key.lemma == target.key.lemma) continue;
    ctx.lemmas.push_back(pos_strict ? t.key.render() : t.key.lemma);
  }
  std::sort(ctx.lemmas.begin(), ctx.lemmas.end());
  ctx.lemmas.erase(std::unique(ctx.lemmas.begin(), ctx.lemmas.end()), ctx.lemmas.end());
  return ctx;
}

std::size_t overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    const int c = i->compare(*j);
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::size_t lesk_basic(const SenseInventory& inv, const Sense& s1, const Sense& s2) {
  return overlap(inv.gloss_bag(s1), inv.gloss_bag(s2));
}

std::size_t lesk_variant(const SenseInventory& inv, const ContextBag& ctx, const Sense& s) {
  return overlap(ctx.lemmas, inv.gloss_bag(s));
}

const std::vector<std::string>& expanded_bag(const SenseInventory& inv, const Sense& s) {
  return inv.expanded_bag(s);
}

std::size_t lesk_extended_simplified(const SenseInventory& inv, const Sense& s1, const Sense& s2) {
  return overlap(inv.expanded_bag(s1), inv.expanded_bag(s2));
}

std::size_t sense_pair_score(LeskAlgorithm alg, const SenseInventory& inv, const ContextBag& ctx,
                             const Sense& s1, const Sense& s2) {
  switch (alg) {
    case LeskAlgorithm::Basic: return lesk_basic(inv, s1, s2);
    case LeskAlgorithm::Variant: return lesk_variant(inv, ctx, s1);
    case LeskAlgorithm::ExtendedSimplified: return lesk_extended_simplified(inv, s1, s2);
  }
  return 0;
}

}  // namespace distwsd
