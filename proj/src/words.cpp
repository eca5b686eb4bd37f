#include "ec/words.hpp"

namespace ec {

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w)
        push_reduced(out, l);
    return out;
}

Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(-*it);
    return out;
}

Word concat_reduced(const Word& a, const Word& b) {
    Word out = a;
    out.reserve(a.size() + b.size());
    for (Letter l : b)
        push_reduced(out, l);
    return out;
}

Word cyclic_reduce(const Word& w) {
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool is_freely_reduced(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == -w[i - 1]) return false;
    return true;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += "g" + std::to_string(letter_generator(w[i]) + 1);
        if (w[i] < 0) s += "^-1";
    }
    return s;
}

} // namespace ec
