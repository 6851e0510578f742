#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace sumdil {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical rational num/den; throws on zero denominator.
Rat make_rat(const Int& num, const Int& den);
Rat parse_rat(const std::string& text);
std::string to_string(const Int& v);
std::string to_string(const Rat& v);

Int floor_div(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int ceil_rat(const Rat& r);
Int floor_rat(const Rat& r);

// Checked conversion; throws when v does not fit.
std::int64_t to_i64(const Int& v);
inline Int to_int(std::int64_t v) { return Int(static_cast<long>(v)); }

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

} // namespace sumdil
