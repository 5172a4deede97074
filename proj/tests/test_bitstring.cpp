#include <doctest.h>

#include <random>
#include <string>

#include "rxe/bitstring.hpp"

#ifdef RXE_HAVE_BOOST_MP
#include <boost/multiprecision/cpp_int.hpp>
#endif

using rxe::BitString;

namespace {

BitString bits(const char* s) { return BitString::from_string(s); }

std::string random_bits(std::mt19937_64& rng, std::size_t len) {
  std::string s(len, '0');
  for (char& c : s) c = (rng() & 1U) ? '1' : '0';
  return s;
}

}  // namespace

TEST_CASE("positions run from the most significant bit") {
  const BitString s = bits("100101");
  CHECK(s.size() == 6);
  CHECK(s.value() == 37);
  CHECK(s.test(1));
  CHECK_FALSE(s.test(2));
  CHECK(s.test(6));
  CHECK(s.to_string() == "100101");
  CHECK(BitString::from_value(6, 9).to_string() == "001001");
  CHECK_THROWS(s.test(0));
  CHECK_THROWS(s.test(7));
  CHECK_THROWS(BitString::from_string("10x"));
}

TEST_CASE("shifts") {
  CHECK((bits("10") >> 1) == bits("01"));
  CHECK((bits("101") << 1) == bits("010"));
  CHECK((bits("100100") >> 2) == bits("001001"));
  CHECK((bits("1") >> 1) == bits("0"));
  CHECK(bits("110").shifted(-1) == bits("100"));
  CHECK(bits("110").shifted(1) == bits("011"));
  CHECK_THROWS(bits("110").shifted(4));
}

TEST_CASE("subtraction wraps modulo 2^L") {
  CHECK(bits("100101") - bits("001001") == bits("011100"));
  CHECK(bits("1011") - bits("0000") == bits("1011"));
  CHECK(bits("0000") - bits("0001") == bits("1111"));
  CHECK_THROWS(bits("01") - bits("001"));
}

TEST_CASE("multiplication keeps the low bits") {
  CHECK(rxe::multiply(bits("01"), bits("1001"), 6) == bits("001001"));
  CHECK(bits("1011") * bits("0001") == bits("1011"));
  CHECK(bits("1011") * bits("0000") == bits("0000"));
  CHECK(bits("0011") * bits("0110") == bits("0010"));  // 3 * 6 = 18 = 2 mod 16
}

TEST_CASE("boolean operators are positionwise") {
  CHECK((bits("1100") & bits("1010")) == bits("1000"));
  CHECK((bits("1100") | bits("1010")) == bits("1110"));
  CHECK((bits("1100") ^ bits("1010")) == bits("0110"));
  CHECK(~bits("1100") == bits("0011"));
  BitString one(70);
  one.set(70);
  CHECK(~BitString(70) == BitString(70) - one);
}

TEST_CASE("multi-word shifts agree with a string model") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t len = 1 + rng() % 300;
    const std::string s = random_bits(rng, len);
    const std::size_t k = rng() % (len + 1);
    const std::string right = std::string(k, '0') + s.substr(0, len - k);
    const std::string left = s.substr(k) + std::string(k, '0');
    CHECK((BitString::from_string(s) >> k).to_string() == right);
    CHECK((BitString::from_string(s) << k).to_string() == left);
  }
}

TEST_CASE("resizing keeps the integer modulo the new length") {
  CHECK(bits("100101").resized(3) == bits("101"));
  CHECK(bits("101").resized(6) == bits("000101"));
  BitString s(100);
  s.set(100);
  CHECK(s.count() == 1);
  CHECK(s.resized(1) == bits("1"));
}

#ifdef RXE_HAVE_BOOST_MP
TEST_CASE("multi-word subtraction agrees with big integers") {
  using boost::multiprecision::cpp_int;
  std::mt19937_64 rng(5);
  auto to_int = [](const std::string& s) {
    cpp_int v = 0;
    for (char c : s) v = v * 2 + (c == '1' ? 1 : 0);
    return v;
  };
  for (std::size_t len : {1, 63, 64, 65, 127, 128, 129, 500, 1024, 4096}) {
    const cpp_int modulus = cpp_int(1) << len;
    for (int trial = 0; trial < 20; ++trial) {
      const std::string a = random_bits(rng, len);
      const std::string b = trial == 0 ? std::string(len, '0') : random_bits(rng, len);
      const std::string c = trial == 1 ? std::string(len, '1') : a;
      cpp_int expect = (to_int(c) - to_int(b)) % modulus;
      if (expect < 0) expect += modulus;
      const BitString got = BitString::from_string(c) - BitString::from_string(b);
      CHECK(to_int(got.to_string()) == expect);
    }
  }
}
#endif
