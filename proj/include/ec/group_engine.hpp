#pragma once

#include <cstdint>
#include <vector>

#include "ec/bigint.hpp"
#include "ec/errors.hpp"
#include "ec/words.hpp"

namespace ec {

// A finite presentation; relators are freely and cyclically reduced, never empty.
struct FPGroup {
    std::size_t generators = 0;
    std::vector<Word> relators;
};

FPGroup make_fp_group(std::size_t generators, std::vector<Word> relators);

enum class Certification : std::uint8_t { TrivialCertified, FreeCertified, Inconclusive };

// Result of bounded Tietze simplification; holds the isomorphic smaller
// presentation and the substitution taking original generators to words over
// the surviving ones.
class SimplifiedPresentation {
public:
    const FPGroup& group() const { return group_; }
    Certification certification() const { return cert_; }
    bool certified_free() const {
        return cert_ == Certification::FreeCertified || cert_ == Certification::TrivialCertified;
    }
    std::size_t rank() const { return group_.generators; }
    std::size_t original_generators() const { return images_.size(); }

    // Image of an original generator as a reduced word over simplified generators.
    const Word& image(std::size_t original_gen) const { return images_[original_gen]; }
    // Applies the substitution letter-by-letter and freely reduces.
    Word map_word(const Word& w) const;

    friend SimplifiedPresentation tietze_simplify(const FPGroup&, std::size_t);

private:
    FPGroup group_;
    Certification cert_ = Certification::Inconclusive;
    std::vector<Word> images_;
};

// Length<=2 relator eliminations plus removal of generators occurring exactly
// once across all relators; never grows the presentation, terminates within
// the sweep budget.
SimplifiedPresentation tietze_simplify(const FPGroup& group, std::size_t pass_budget = 50);

struct AbelianInvariants {
    std::size_t betti = 0;
    std::vector<BigInt> torsion; // invariant factors > 1, divisibility chain
};

bool operator==(const AbelianInvariants& a, const AbelianInvariants& b);

// Smith normal form of the relator exponent matrix, exact integers.
AbelianInvariants abelianize(const FPGroup& group);

// Equality of two words as elements, valid only for certified-free results.
bool word_equal_free(const SimplifiedPresentation& simplified, const Word& w1, const Word& w2);

// --- exact linear algebra over Z ------------------------------------------

struct SmithResult {
    std::vector<BigInt> invariant_factors; // nonzero diag entries, d1 | d2 | ...
    std::size_t rank = 0;
};

// Dense SNF; `rows` is a list of integer rows (all the same width).
SmithResult smith_normal_form(std::vector<std::vector<BigInt>> rows, std::size_t cols);

// Row-style Hermite basis of the lattice spanned by `rows`; used to decide
// lattice membership and reduce vectors to canonical coset representatives.
class IntegerLattice {
public:
    IntegerLattice(std::vector<std::vector<BigInt>> rows, std::size_t cols);
    std::size_t rank() const { return basis_.size(); }
    // canonical representative of v + lattice
    std::vector<BigInt> reduce(std::vector<BigInt> v) const;
    bool contains(std::vector<BigInt> v) const;

private:
    std::size_t cols_;
    std::vector<std::vector<BigInt>> basis_; // echelon rows, positive pivots
    std::vector<std::size_t> pivot_col_;
};

// Integer rank of a sparse matrix given as columns of (row, value) pairs.
std::size_t integer_rank(const std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>& cols,
                         std::size_t rows);

} // namespace ec
