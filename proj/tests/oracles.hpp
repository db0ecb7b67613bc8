// SPDX-License-Identifier: Apache-2.0
// Independent reference implementations used only by the tests. They work
// on raw word maps and never call the library's group law, refinement,
// bi-thorn or classification code.
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hier/spheromorphism.hpp"
#include "hier/thorn.hpp"

namespace oracle {

using Word = std::string;
using Map = std::function<std::optional<Word>(const Word&)>;

// Image of `w` under a table by linear scan; nullopt when no domain leaf
// is a prefix of w.
std::optional<Word> apply_word(const hier::Spheromorphism& g, const Word& w);
std::optional<Word> apply_inverse_word(const hier::Spheromorphism& g, const Word& w);

std::vector<Word> words_of_length(int n, std::size_t length);
std::vector<Word> extensions(int n, const Word& prefix, std::size_t length);

// True when the two maps agree on every word of length `depth`, extending
// words (up to `max_depth`) wherever either side is undefined.
bool agree(int n, const Map& f, const Map& g, std::size_t depth, std::size_t max_depth);

Map as_map(const hier::Spheromorphism& g);
Map compose_maps(Map outer, Map inner);

// Decides membership in Aut(T_n) by checking that g and its inverse send
// every ball cut at depth <= table depth + 2 onto a ball.
bool extends_to_automorphism(const hier::Spheromorphism& g);

// Disjoint cylinders covering the image of the cylinder under `prefix`.
std::set<Word> image_of_cylinder(const hier::Spheromorphism& g, const Word& prefix,
                                 bool inverse);
// "" when the union of `cylinders` is no ball; else "d:<cut>" or "u:<cut>".
std::string ball_shape(int n, const std::set<Word>& cylinders);

// Isomorphism of small thorns by trying every vertex bijection.
bool isomorphic(const hier::AbstractThorn& a, const hier::AbstractThorn& b);

}  // namespace oracle
