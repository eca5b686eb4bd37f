#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ec {

// Arbitrary-precision signed integer (sign + base-2^32 magnitude).
// Division truncates toward zero, like built-in integers.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    bool is_zero() const { return mag_.empty(); }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const { return sign_ > 0 && mag_.size() == 1 && mag_[0] == 1; }
    bool is_unit() const { return mag_.size() == 1 && mag_[0] == 1; }

    BigInt abs() const;
    BigInt negated() const;

    // -1 / 0 / +1 comparison of signed values.
    static int compare(const BigInt& a, const BigInt& b);
    // Compares |a| and |b|.
    static int compare_magnitude(const BigInt& a, const BigInt& b);

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

    struct DivMod;
    static DivMod divmod(const BigInt& a, const BigInt& b);

    // Floor division quotient (used for lattice reduction).
    static BigInt fdiv(const BigInt& a, const BigInt& b);

    static BigInt gcd(BigInt a, BigInt b); // non-negative

    std::string str() const;
    // Lossy check helper for tests; requires the value to fit.
    std::int64_t to_int64() const;
    bool fits_int64() const;

private:
    int sign_ = 0;                   // -1, 0, +1; 0 iff mag_ empty
    std::vector<std::uint32_t> mag_; // little-endian, no leading zero limb

    void trim();
    static std::vector<std::uint32_t> mag_add(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> mag_sub(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static int mag_cmp(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
};

struct BigInt::DivMod {
    BigInt quot;
    BigInt rem; // same sign as the dividend (truncated division)
};

} // namespace ec
