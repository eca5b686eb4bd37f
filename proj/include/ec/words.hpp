#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace ec {

// A letter is a signed 1-based generator index: +(g+1) or -(g+1) for generator g.
// Words are freely reduced unless stated otherwise.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline std::size_t letter_generator(Letter l) { return static_cast<std::size_t>(std::abs(l)) - 1; }
inline Letter make_letter(std::size_t gen, bool positive) {
    return positive ? static_cast<Letter>(gen + 1) : -static_cast<Letter>(gen + 1);
}

// Push a letter onto a reduced word, cancelling an adjacent inverse pair.
inline void push_reduced(Word& w, Letter l) {
    if (!w.empty() && w.back() == -l)
        w.pop_back();
    else
        w.push_back(l);
}

Word free_reduce(const Word& w);
Word inverse_word(const Word& w);
Word concat_reduced(const Word& a, const Word& b);

// Strips matching conjugating letters: x w x^-1 -> w. Input must be freely reduced.
Word cyclic_reduce(const Word& w);

bool is_freely_reduced(const Word& w);

// Renders e.g. "g1*g3^-1" ("1" for the empty word).
std::string word_to_string(const Word& w);

} // namespace ec
