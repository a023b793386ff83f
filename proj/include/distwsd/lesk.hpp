#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distwsd/corpus.hpp"
#include "distwsd/inventory.hpp"

namespace distwsd {

enum class LeskAlgorithm { Basic, Variant, ExtendedSimplified };

std::string_view to_string(LeskAlgorithm alg);  // "basic", "variant", "extended"
std::optional<LeskAlgorithm> parse_lesk(std::string_view name);

// Content lemmas of the target's sentence, minus the target lemma itself.
struct ContextBag {
  std::vector<std::string> lemmas;  // sorted, unique
};

ContextBag make_context(const Sentence& s, const Token& target, bool pos_strict = false);

// Size of the intersection of two sorted, duplicate-free ranges.
std::size_t overlap(const std::vector<std::string>& a, const std::vector<std::string>& b);

std::size_t lesk_basic(const SenseInventory& inv, const Sense& s1, const Sense& s2);
std::size_t lesk_variant(const SenseInventory& inv, const ContextBag& ctx, const Sense& s);
const std::vector<std::string>& expanded_bag(const SenseInventory& inv, const Sense& s);
std::size_t lesk_extended_simplified(const SenseInventory& inv, const Sense& s1, const Sense& s2);

// Score(S, S'). Variant ignores s2.
std::size_t sense_pair_score(LeskAlgorithm alg, const SenseInventory& inv, const ContextBag& ctx,
                             const Sense& s1, const Sense& s2);

}  // namespace distwsd
