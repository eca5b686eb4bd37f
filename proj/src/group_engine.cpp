#include "ec/group_engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

namespace ec {

FPGroup make_fp_group(std::size_t generators, std::vector<Word> relators) {
    FPGroup g;
    g.generators = generators;
    g.relators.reserve(relators.size());
    for (auto& r : relators) {
        for (Letter l : r) {
            if (l == 0 || letter_generator(l) >= generators)
                throw ValidationError("relator letter out of range");
        }
        if (is_freely_reduced(r) && (r.size() < 2 || r.front() != -r.back())) {
            g.relators.push_back(std::move(r));
            continue;
        }
        Word w = cyclic_reduce(free_reduce(r));
        if (!w.empty()) g.relators.push_back(std::move(w));
    }
    return g;
}

Word SimplifiedPresentation::map_word(const Word& w) const {
    Word out;
    for (Letter l : w) {
        const Word& img = images_[letter_generator(l)];
        if (l > 0) {
            for (Letter x : img)
                push_reduced(out, x);
        } else {
            for (auto it = img.rbegin(); it != img.rend(); ++it)
                push_reduced(out, -*it);
        }
    }
    return out;
}

namespace {

struct TietzeState {
    std::size_t n;
    std::vector<Word> rel;
    std::vector<char> rel_alive;
    std::vector<char> gen_alive;
    std::vector<std::int64_t> occ;                  // occurrences across live relators
    std::vector<std::vector<std::uint32_t>> where;  // gen -> relator indices (may be stale)
    std::vector<std::pair<std::size_t, Word>> elim; // (gen, replacement over gens live at that time)
    std::deque<std::uint32_t> short_queue;
    std::deque<std::uint32_t> gen_queue;

    void index_relator(std::uint32_t r) {
        for (Letter l : rel[r])
            where[letter_generator(l)].push_back(r);
    }
    void count_letters(const Word& w, std::int64_t delta) {
        for (Letter l : w) {
            std::size_t g = letter_generator(l);
            occ[g] += delta;
            if (delta < 0 && occ[g] == 1 && gen_alive[g]) gen_queue.push_back(static_cast<std::uint32_t>(g));
        }
    }
    void set_relator(std::uint32_t r, Word w) {
        count_letters(rel[r], -1);
        count_letters(w, +1);
        rel[r] = std::move(w);
        index_relator(r);
        if (rel[r].empty()) {
            rel_alive[r] = 0;
        } else if (rel[r].size() <= 2) {
            short_queue.push_back(r);
        }
    }
    void reduce_relator(std::uint32_t r) {
        Word w = cyclic_reduce(free_reduce(rel[r]));
        if (w.size() != rel[r].size()) set_relator(r, std::move(w));
        else if (rel[r].size() <= 2) short_queue.push_back(r);
    }
    // canonical representative of a relator's conjugacy-and-inversion class:
    // lexicographically least rotation of the word or its inverse
    static Word canonical_cyclic(const Word& w) {
        Word best = w;
        auto consider = [&](Word base) {
            for (std::size_t r = 0; r < base.size(); ++r) {
                std::rotate(base.begin(), base.begin() + 1, base.end());
                if (base < best) best = base;
            }
        };
        consider(w);
        consider(inverse_word(w));
        return best;
    }

    // drop relators that duplicate an earlier live relator up to rotation/inversion
    bool dedup_relators() {
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;
        auto hash_word = [](const Word& w) {
            std::uint64_t h = 1469598103934665603ull;
            for (Letter l : w) {
                h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l));
                h *= 1099511628211ull;
            }
            return h ^ w.size();
        };
        bool changed = false;
        std::vector<Word> canon(rel.size());
        for (std::uint32_t r = 0; r < rel.size(); ++r) {
            if (!rel_alive[r]) continue;
            canon[r] = canonical_cyclic(rel[r]);
            auto& bucket = seen[hash_word(canon[r])];
            bool dup = false;
            for (std::uint32_t other : bucket)
                if (canon[other] == canon[r]) {
                    dup = true;
                    break;
                }
            if (dup) {
                rel_alive[r] = 0;
                count_letters(rel[r], -1);
                rel[r].clear();
                changed = true;
            } else {
                bucket.push_back(r);
            }
        }
        return changed;
    }

    // replace every occurrence of generator g by w (w over live generators)
    void substitute(std::size_t g, const Word& w) {
        std::vector<std::uint32_t> locations = where[g];
        std::sort(locations.begin(), locations.end());
        locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
        where[g].clear();
        gen_alive[g] = 0;
        elim.emplace_back(g, w);
        for (std::uint32_t r : locations) {
            if (!rel_alive[r]) continue;
            bool touches = false;
            for (Letter l : rel[r])
                if (letter_generator(l) == g) {
                    touches = true;
                    break;
                }
            if (!touches) continue;
            Word next;
            next.reserve(rel[r].size() + w.size());
            for (Letter l : rel[r]) {
                if (letter_generator(l) != g) {
                    push_reduced(next, l);
                } else if (l > 0) {
                    for (Letter x : w)
                        push_reduced(next, x);
                } else {
                    for (auto it = w.rbegin(); it != w.rend(); ++it)
                        push_reduced(next, -*it);
                }
            }
            set_relator(r, cyclic_reduce(std::move(next)));
        }
    }
};

} // namespace

SimplifiedPresentation tietze_simplify(const FPGroup& group, std::size_t pass_budget) {
    TietzeState st;
    st.n = group.generators;
    st.rel = group.relators;
    st.rel_alive.assign(st.rel.size(), 1);
    st.gen_alive.assign(st.n, 1);
    st.occ.assign(st.n, 0);
    st.where.assign(st.n, {});
    for (std::uint32_t r = 0; r < st.rel.size(); ++r) {
        st.index_relator(r);
        st.count_letters(st.rel[r], +1);
    }
    for (std::uint32_t r = 0; r < st.rel.size(); ++r)
        if (st.rel[r].size() <= 2) st.short_queue.push_back(r);
    for (std::uint32_t g = 0; g < st.n; ++g)
        if (st.occ[g] == 1) st.gen_queue.push_back(g);

    std::size_t sweeps = 0;
    while (sweeps < pass_budget) {
        ++sweeps;
        if (st.short_queue.empty() && st.gen_queue.empty()) {
            // the cheap cascade stalled: duplicate relators are the usual culprit
            if (!st.dedup_relators()) break;
            if (st.short_queue.empty() && st.gen_queue.empty()) break;
        }
        while (!st.short_queue.empty() || !st.gen_queue.empty()) {
            if (!st.short_queue.empty()) {
                std::uint32_t r = st.short_queue.front();
                st.short_queue.pop_front();
                if (!st.rel_alive[r] || st.rel[r].size() > 2) continue;
                const Word w = st.rel[r];
                if (w.size() == 1) {
                    std::size_t g = letter_generator(w[0]);
                    if (!st.gen_alive[g]) continue;
                    st.rel_alive[r] = 0;
                    st.count_letters(st.rel[r], -1);
                    st.rel[r].clear();
                    st.substitute(g, Word{});
                } else if (w.size() == 2) {
                    std::size_t g1 = letter_generator(w[0]);
                    std::size_t g2 = letter_generator(w[1]);
                    if (g1 == g2) continue; // g^2-style relator: not a free elimination
                    if (!st.gen_alive[g1] || !st.gen_alive[g2]) continue;
                    // eliminate the larger-indexed generator, deterministic
                    std::size_t victim = std::max(g1, g2);
                    Letter lv = letter_generator(w[0]) == victim ? w[0] : w[1];
                    Letter lo = letter_generator(w[0]) == victim ? w[1] : w[0];
                    // lv * lo = 1 cyclically => victim^sign = lo^-1
                    Word replacement{lv > 0 ? -lo : lo};
                    st.rel_alive[r] = 0;
                    st.count_letters(st.rel[r], -1);
                    st.rel[r].clear();
                    st.substitute(victim, replacement);
                }
            } else {
                std::uint32_t g = st.gen_queue.front();
                st.gen_queue.pop_front();
                if (!st.gen_alive[g] || st.occ[g] != 1) continue;
                // locate the single occurrence
                std::uint32_t host = UINT32_MAX;
                for (std::uint32_t r : st.where[g]) {
                    if (!st.rel_alive[r]) continue;
                    for (Letter l : st.rel[r])
                        if (letter_generator(l) == g) {
                            host = r;
                            break;
                        }
                    if (host != UINT32_MAX) break;
                }
                if (host == UINT32_MAX) continue;
                // rotate so the occurrence is first: r = g^s t, so g = t^-1 when s=+1, t when s=-1
                const Word& w = st.rel[host];
                std::size_t pos = 0;
                while (letter_generator(w[pos]) != g)
                    ++pos;
                Word tail;
                tail.reserve(w.size() - 1);
                for (std::size_t i = pos + 1; i < w.size(); ++i)
                    tail.push_back(w[i]);
                for (std::size_t i = 0; i < pos; ++i)
                    tail.push_back(w[i]);
                Word replacement = w[pos] > 0 ? inverse_word(tail) : tail;
                st.rel_alive[host] = 0;
                st.count_letters(st.rel[host], -1);
                st.rel[host].clear();
                // g no longer occurs anywhere: record the elimination only
                st.where[g].clear();
                st.gen_alive[g] = 0;
                st.elim.emplace_back(g, std::move(replacement));
            }
        }
    }

    SimplifiedPresentation out;
    // compact surviving generators
    std::vector<std::int64_t> new_id(st.n, -1);
    std::size_t live = 0;
    for (std::size_t g = 0; g < st.n; ++g)
        if (st.gen_alive[g]) new_id[g] = static_cast<std::int64_t>(live++);
    out.group_.generators = live;
    for (std::uint32_t r = 0; r < st.rel.size(); ++r) {
        if (!st.rel_alive[r]) continue;
        Word w;
        w.reserve(st.rel[r].size());
        for (Letter l : st.rel[r]) {
            std::int64_t id = new_id[letter_generator(l)];
            assert(id >= 0);
            w.push_back(make_letter(static_cast<std::size_t>(id), l > 0));
        }
        out.group_.relators.push_back(std::move(w));
    }
    if (out.group_.relators.empty())
        out.cert_ = live == 0 ? Certification::TrivialCertified : Certification::FreeCertified;
    else
        out.cert_ = Certification::Inconclusive;

    // resolve substitution images; later eliminations only reference earlier-live
    // generators, so a reverse pass sees every reference already resolved
    out.images_.assign(st.n, Word{});
    std::vector<char> resolved(st.n, 0);
    for (std::size_t g = 0; g < st.n; ++g)
        if (st.gen_alive[g]) {
            out.images_[g] = {make_letter(static_cast<std::size_t>(new_id[g]), true)};
            resolved[g] = 1;
        }
    for (auto it = st.elim.rbegin(); it != st.elim.rend(); ++it) {
        Word img;
        for (Letter l : it->second) {
            std::size_t g = letter_generator(l);
            assert(resolved[g]);
            const Word& sub = out.images_[g];
            if (l > 0) {
                for (Letter x : sub)
                    push_reduced(img, x);
            } else {
                for (auto rit = sub.rbegin(); rit != sub.rend(); ++rit)
                    push_reduced(img, -*rit);
            }
        }
        out.images_[it->first] = std::move(img);
        resolved[it->first] = 1;
    }
    return out;
}

bool operator==(const AbelianInvariants& a, const AbelianInvariants& b) {
    if (a.betti != b.betti || a.torsion.size() != b.torsion.size()) return false;
    for (std::size_t i = 0; i < a.torsion.size(); ++i)
        if (a.torsion[i] != b.torsion[i]) return false;
    return true;
}

namespace {

using SparseRow = std::vector<std::pair<std::uint32_t, BigInt>>; // sorted by column

SparseRow row_axpy(const SparseRow& a, const BigInt& c, const SparseRow& b) {
    // a + c*b
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i >= a.size() || b[j].first < a[i].first) {
            BigInt v = c * b[j].second;
            if (!v.is_zero()) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            BigInt v = a[i].second + c * b[j].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

SmithResult smith_normal_form(std::vector<std::vector<BigInt>> m, std::size_t cols) {
    SmithResult res;
    std::size_t rows = m.size();
    for (auto& r : m)
        if (r.size() != cols) throw ValidationError("smith_normal_form: ragged matrix");
    std::size_t t = 0;
    std::vector<BigInt> diag;
    while (true) {
        // find minimal-magnitude nonzero entry in the submatrix
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!m[i][j].is_zero() &&
                    (pi == rows || BigInt::compare_magnitude(m[i][j], m[pi][pj]) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m[t], m[pi]);
        for (std::size_t i = 0; i < rows; ++i)
            std::swap(m[i][t], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            // clear column t
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t].is_zero()) continue;
                BigInt q = m[i][t] / m[t][t];
                if (!q.is_zero())
                    for (std::size_t j = t; j < cols; ++j)
                        m[i][j] -= q * m[t][j];
                if (!m[i][t].is_zero()) {
                    std::swap(m[t], m[i]); // remainder is smaller; restart
                    clean = false;
                }
            }
            if (!clean) continue;
            // clear row t
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j].is_zero()) continue;
                BigInt q = m[t][j] / m[t][t];
                if (!q.is_zero())
                    for (std::size_t i = t; i < rows; ++i)
                        m[i][j] -= q * m[i][t];
                if (!m[t][j].is_zero()) {
                    for (std::size_t i = t; i < rows; ++i)
                        std::swap(m[i][t], m[i][j]);
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            // pivot must divide everything that remains
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols && clean; ++j)
                    if (!(m[i][j] % m[t][t]).is_zero()) {
                        for (std::size_t k = t; k < cols; ++k)
                            m[t][k] += m[i][k];
                        clean = false;
                    }
        }
        if (m[t][t].is_negative()) m[t][t] = m[t][t].abs();
        diag.push_back(m[t][t]);
        ++t;
        if (t >= rows || t >= cols) break;
    }
    res.rank = diag.size();
    res.invariant_factors = std::move(diag);
    return res;
}

AbelianInvariants abelianize(const FPGroup& group) {
    // sparse exponent rows
    std::vector<SparseRow> sparse;
    sparse.reserve(group.relators.size());
    for (const Word& r : group.relators) {
        std::map<std::uint32_t, std::int64_t> sums;
        for (Letter l : r)
            sums[static_cast<std::uint32_t>(letter_generator(l))] += l > 0 ? 1 : -1;
        SparseRow row;
        for (auto& [c, v] : sums)
            if (v != 0) row.emplace_back(c, BigInt(v));
        if (!row.empty()) sparse.push_back(std::move(row));
    }

    // phase 1: strip unit pivots (each contributes invariant factor 1)
    std::size_t unit_pivots = 0;
    std::vector<char> col_gone(group.generators, 0);
    std::vector<char> row_gone(sparse.size(), 0);
    std::vector<std::vector<std::uint32_t>> col_rows(group.generators);
    for (std::uint32_t i = 0; i < sparse.size(); ++i)
        for (auto& [c, v] : sparse[i])
            col_rows[c].push_back(i);
    std::deque<std::uint32_t> candidates;
    for (std::uint32_t i = 0; i < sparse.size(); ++i)
        candidates.push_back(i);
    while (!candidates.empty()) {
        std::uint32_t i = candidates.front();
        candidates.pop_front();
        if (row_gone[i]) continue;
        // find a unit entry
        std::uint32_t pc = UINT32_MAX;
        for (auto& [c, v] : sparse[i])
            if (!col_gone[c] && v.is_unit()) {
                pc = c;
                break;
            }
        if (pc == UINT32_MAX) continue;
        BigInt pivot;
        for (auto& [c, v] : sparse[i])
            if (c == pc) pivot = v;
        // eliminate column pc from all other rows
        for (std::uint32_t j : col_rows[pc]) {
            if (j == i || row_gone[j]) continue;
            BigInt e;
            for (auto& [c, v] : sparse[j])
                if (c == pc) e = v;
            if (e.is_zero()) continue;
            BigInt coef = (pivot.is_negative() ? e : e.negated());
            sparse[j] = row_axpy(sparse[j], coef, sparse[i]);
            for (auto& [c, v] : sparse[j])
                col_rows[c].push_back(j);
            candidates.push_back(j);
        }
        row_gone[i] = 1;
        col_gone[pc] = 1;
        ++unit_pivots;
    }

    // phase 2: dense SNF on the residual
    std::vector<std::uint32_t> live_cols;
    for (std::uint32_t c = 0; c < group.generators; ++c)
        if (!col_gone[c]) live_cols.push_back(c);
    std::vector<std::uint32_t> col_pos(group.generators, UINT32_MAX);
    for (std::uint32_t k = 0; k < live_cols.size(); ++k)
        col_pos[live_cols[k]] = k;
    std::vector<std::vector<BigInt>> dense;
    for (std::uint32_t i = 0; i < sparse.size(); ++i) {
        if (row_gone[i]) continue;
        std::vector<BigInt> row(live_cols.size());
        bool nonzero = false;
        for (auto& [c, v] : sparse[i]) {
            if (col_gone[c] || v.is_zero()) continue;
            row[col_pos[c]] += v;
            nonzero = true;
        }
        (void)nonzero;
        dense.push_back(std::move(row));
    }
    SmithResult snf = smith_normal_form(std::move(dense), live_cols.size());

    AbelianInvariants out;
    std::size_t rank = unit_pivots + snf.rank;
    out.betti = group.generators - rank;
    for (const BigInt& d : snf.invariant_factors)
        if (!d.is_one()) out.torsion.push_back(d);
    return out;
}

bool word_equal_free(const SimplifiedPresentation& simplified, const Word& w1, const Word& w2) {
    if (!simplified.certified_free())
        throw ValidationError("word_equal_free requires a FreeCertified simplification");
    return simplified.map_word(w1) == simplified.map_word(w2);
}

IntegerLattice::IntegerLattice(std::vector<std::vector<BigInt>> rows, std::size_t cols)
    : cols_(cols) {
    auto leading = [&](const std::vector<BigInt>& r) -> std::size_t {
        for (std::size_t j = 0; j < r.size(); ++j)
            if (!r[j].is_zero()) return j;
        return r.size();
    };
    for (auto& incoming : rows) {
        if (incoming.size() != cols_) throw ValidationError("IntegerLattice: ragged rows");
        std::vector<BigInt> v = std::move(incoming);
        while (true) {
            std::size_t lead = leading(v);
            if (lead == cols_) break;
            bool merged = false;
            for (std::size_t b = 0; b < basis_.size(); ++b) {
                if (pivot_col_[b] != lead) continue;
                BigInt q = v[lead] / basis_[b][lead];
                if (!q.is_zero())
                    for (std::size_t j = lead; j < cols_; ++j)
                        v[j] -= q * basis_[b][j];
                if (!v[lead].is_zero()) std::swap(v, basis_[b]); // strictly smaller pivot; loop
                merged = true;
                break;
            }
            if (!merged) {
                if (v[lead].is_negative())
                    for (auto& x : v)
                        x = x.negated();
                basis_.push_back(std::move(v));
                pivot_col_.push_back(lead);
                break;
            }
            if (leading(v) == cols_) break;
        }
    }
    // order by pivot column and reduce entries above pivots
    std::vector<std::size_t> order(basis_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivot_col_[a] < pivot_col_[b]; });
    std::vector<std::vector<BigInt>> nb;
    std::vector<std::size_t> np;
    for (std::size_t i : order) {
        nb.push_back(std::move(basis_[i]));
        np.push_back(pivot_col_[i]);
    }
    basis_ = std::move(nb);
    pivot_col_ = std::move(np);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i][pivot_col_[i]].is_negative())
            for (auto& x : basis_[i])
                x = x.negated();
    for (std::size_t i = basis_.size(); i-- > 0;) {
        for (std::size_t k = 0; k < i; ++k) {
            BigInt q = BigInt::fdiv(basis_[k][pivot_col_[i]], basis_[i][pivot_col_[i]]);
            if (!q.is_zero())
                for (std::size_t j = pivot_col_[i]; j < cols_; ++j)
                    basis_[k][j] -= q * basis_[i][j];
        }
    }
}

std::vector<BigInt> IntegerLattice::reduce(std::vector<BigInt> v) const {
    if (v.size() != cols_) throw ValidationError("IntegerLattice::reduce: wrong length");
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        BigInt q = BigInt::fdiv(v[pivot_col_[b]], basis_[b][pivot_col_[b]]);
        if (!q.is_zero())
            for (std::size_t j = pivot_col_[b]; j < cols_; ++j)
                v[j] -= q * basis_[b][j];
    }
    return v;
}

bool IntegerLattice::contains(std::vector<BigInt> v) const {
    v = reduce(std::move(v));
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::size_t integer_rank(const std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>& cols,
                         std::size_t rows) {
    std::vector<std::vector<BigInt>> as_rows;
    as_rows.reserve(cols.size());
    for (const auto& col : cols) {
        std::vector<BigInt> r(rows);
        for (auto& [i, v] : col)
            r[i] += BigInt(v);
        as_rows.push_back(std::move(r));
    }
    IntegerLattice lat(std::move(as_rows), rows);
    return lat.rank();
}

} // namespace ec
