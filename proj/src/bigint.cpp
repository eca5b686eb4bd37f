#include "ec/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ec {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on INT64_MIN
    std::uint64_t u = v < 0 ? (~static_cast<std::uint64_t>(v) + 1ull) : static_cast<std::uint64_t>(v);
    mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffull));
    if (u >> 32) mag_.push_back(static_cast<std::uint32_t>(u >> 32));
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0)
        mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt BigInt::negated() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

int BigInt::mag_cmp(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::compare_magnitude(const BigInt& a, const BigInt& b) { return mag_cmp(a.mag_, b.mag_); }

int BigInt::compare(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int m = mag_cmp(a.mag_, b.mag_);
    return a.sign_ >= 0 ? m : -m;
}

std::vector<std::uint32_t> BigInt::mag_add(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<std::uint32_t> r;
    r.reserve(hi.size() + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        r.push_back(static_cast<std::uint32_t>(s & 0xffffffffull));
        carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
}

std::vector<std::uint32_t> BigInt::mag_sub(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r;
    r.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (d < 0) {
            d += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.push_back(static_cast<std::uint32_t>(d));
    }
    assert(borrow == 0);
    while (!r.empty() && r.back() == 0)
        r.pop_back();
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.mag_ = BigInt::mag_add(a.mag_, b.mag_);
    } else {
        int c = BigInt::mag_cmp(a.mag_, b.mag_);
        if (c == 0) return BigInt();
        const BigInt& big = c > 0 ? a : b;
        const BigInt& small = c > 0 ? b : a;
        r.sign_ = big.sign_;
        r.mag_ = BigInt::mag_sub(big.mag_, small.mag_);
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.mag_.size(); ++j) {
            std::uint64_t cur = r.mag_[i + j] + static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] + carry;
            r.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        std::size_t k = i + b.mag_.size();
        while (carry) {
            std::uint64_t cur = r.mag_[k] + carry;
            r.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigInt::DivMod BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    DivMod out;
    int c = mag_cmp(a.mag_, b.mag_);
    if (c < 0) {
        out.rem = a;
        return out;
    }
    if (b.mag_.size() == 1) {
        // single-limb fast path
        std::uint64_t d = b.mag_[0];
        std::vector<std::uint32_t> q(a.mag_.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = a.mag_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | a.mag_[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        out.quot.mag_ = std::move(q);
        out.quot.sign_ = a.sign_ * b.sign_;
        out.quot.trim();
        if (rem) {
            out.rem.mag_.push_back(static_cast<std::uint32_t>(rem & 0xffffffffull));
            if (rem >> 32) out.rem.mag_.push_back(static_cast<std::uint32_t>(rem >> 32));
            out.rem.sign_ = a.sign_;
        }
        return out;
    }
    // bitwise long division on magnitudes (simple and exact; fast enough for SNF-sized inputs)
    std::vector<std::uint32_t> rem_mag;
    std::size_t total_bits = a.mag_.size() * 32;
    std::vector<std::uint32_t> q(a.mag_.size(), 0);
    for (std::size_t bit = total_bits; bit-- > 0;) {
        // rem = rem*2 + bit(a, bit)
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < rem_mag.size(); ++i) {
            std::uint32_t nc = rem_mag[i] >> 31;
            rem_mag[i] = (rem_mag[i] << 1) | carry;
            carry = nc;
        }
        if (carry) rem_mag.push_back(carry);
        if ((a.mag_[bit / 32] >> (bit % 32)) & 1u) {
            if (rem_mag.empty())
                rem_mag.push_back(1);
            else {
                std::size_t i = 0;
                std::uint64_t add = 1;
                while (add && i < rem_mag.size()) {
                    std::uint64_t s = rem_mag[i] + add;
                    rem_mag[i] = static_cast<std::uint32_t>(s & 0xffffffffull);
                    add = s >> 32;
                    ++i;
                }
                if (add) rem_mag.push_back(static_cast<std::uint32_t>(add));
            }
        }
        if (mag_cmp(rem_mag, b.mag_) >= 0) {
            rem_mag = mag_sub(rem_mag, b.mag_);
            q[bit / 32] |= 1u << (bit % 32);
        }
    }
    out.quot.mag_ = std::move(q);
    out.quot.sign_ = a.sign_ * b.sign_;
    out.quot.trim();
    out.rem.mag_ = std::move(rem_mag);
    out.rem.sign_ = out.rem.mag_.empty() ? 0 : a.sign_;
    out.rem.trim();
    return out;
}

BigInt operator/(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).quot; }
BigInt operator%(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).rem; }

BigInt BigInt::fdiv(const BigInt& a, const BigInt& b) {
    DivMod dm = divmod(a, b);
    if (!dm.rem.is_zero() && (a.is_negative() != b.is_negative()))
        dm.quot -= BigInt(1);
    return dm.quot;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::string BigInt::str() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        // divide by 10^9
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!m.empty() && m.back() == 0)
            m.pop_back();
        std::string chunk = std::to_string(rem);
        if (!m.empty())
            chunk = std::string(9 - chunk.size(), '0') + chunk;
        digits = chunk + digits;
    }
    return (sign_ < 0 ? "-" : "") + digits;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    std::uint64_t u = 0;
    if (mag_.size() >= 1) u |= mag_[0];
    if (mag_.size() == 2) u |= static_cast<std::uint64_t>(mag_[1]) << 32;
    if (sign_ >= 0) return u <= 0x7fffffffffffffffull;
    return u <= 0x8000000000000000ull;
}

std::int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
    std::uint64_t u = 0;
    if (mag_.size() >= 1) u |= mag_[0];
    if (mag_.size() == 2) u |= static_cast<std::uint64_t>(mag_[1]) << 32;
    if (sign_ < 0) return -static_cast<std::int64_t>(u - 1) - 1;
    return static_cast<std::int64_t>(u);
}

} // namespace ec
