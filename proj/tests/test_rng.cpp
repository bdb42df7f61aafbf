#include <set>

#include "doctest.h"
#include "qest/rng.hpp"

using namespace qest;

TEST_CASE("philox known-answer vectors") {
  const auto zero = Philox4x32::apply({0, 0, 0, 0}, {0, 0});
  CHECK(zero == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = Philox4x32::apply({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                      {0xffffffffu, 0xffffffffu});
  CHECK(ones == Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  const auto pi = Philox4x32::apply({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                    {0xa4093822u, 0x299f31d0u});
  CHECK(pi == Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("same seed and id reproduce the sequence") {
  RandomStream a(42, stream_id(StreamTag::kCollective, 7));
  RandomStream b(42, stream_id(StreamTag::kCollective, 7));
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  RandomStream c(42, stream_id(StreamTag::kCollective, 7));
  RandomStream d(42, stream_id(StreamTag::kCollective, 7));
  for (int i = 0; i < 100; ++i) REQUIRE(c.normal() == d.normal());
}

TEST_CASE("first outputs of streams 0..999 are pairwise distinct") {
  for (auto tag : {StreamTag::kCollective, StreamTag::kSemiclassical, StreamTag::kTail}) {
    std::set<std::uint64_t> first;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      RandomStream s(1, stream_id(tag, i));
      first.insert(s());
    }
    CHECK(first.size() == 1000);
  }
}

TEST_CASE("tags separate streams with equal index") {
  RandomStream a(5, stream_id(StreamTag::kSamplerA, 3));
  RandomStream b(5, stream_id(StreamTag::kSamplerB, 3));
  CHECK(a() != b());
  CHECK(stream_id(StreamTag::kSamplerA, 3) != stream_id(StreamTag::kSamplerB, 3));
}

TEST_CASE("different seeds give different streams") {
  RandomStream a(1, 0);
  RandomStream b(2, 0);
  CHECK(a() != b());
}

TEST_CASE("uniform lies in [0, 1) with the right mean") {
  RandomStream s(9, 0);
  double sum = 0.0;
  constexpr int kN = 200000;
  for (int i = 0; i < kN; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / kN == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("gamma draws have the shape as mean") {
  RandomStream s(3, 0);
  double sum = 0.0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) sum += s.gamma(4.5);
  CHECK(sum / kN == doctest::Approx(4.5).epsilon(0.01));
}
