#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <unordered_set>
#include <vector>

#include "lacunary/common.hpp"
#include "lacunary/permutations.hpp"

using namespace lacunary;

namespace {

std::vector<std::uint64_t> prefix_image(const Permutation& sigma, std::uint64_t n) {
  std::vector<std::uint64_t> out(n);
  for (std::uint64_t k = 1; k <= n; ++k) out[k - 1] = sigma(k);
  return out;
}

// Injectivity with positive values: the image of {1..n} is n distinct
// positive integers.
void check_injective(const Permutation& sigma, std::uint64_t n) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(n * 2);
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::uint64_t v = sigma(k);
    REQUIRE(v >= 1);
    REQUIRE(seen.insert(v).second);
  }
}

// Surjectivity at bounded delay: every value up to `cover` appears somewhere
// in the image of {1..n}.
void check_covers(const Permutation& sigma, std::uint64_t n, std::uint64_t cover) {
  std::vector<bool> hit(cover + 1, false);
  for (std::uint64_t k = 1; k <= n; ++k) {
    std::uint64_t v = sigma(k);
    if (v <= cover) hit[v] = true;
  }
  for (std::uint64_t v = 1; v <= cover; ++v) REQUIRE(hit[v]);
}

}  // namespace

TEST_CASE("all rules are injective on a long prefix and cover small values") {
  const std::uint64_t n = 100000;
  for (const Permutation& sigma :
       {Permutation::identity(), Permutation::from_table({3, 1, 2}),
        Permutation::block_interleave(2), Permutation::block_interleave(4),
        Permutation::block_interleave(6, InterleaveSplit::evens_first),
        Permutation::window_selector(2), Permutation::window_selector(3),
        Permutation::window_selector(5)}) {
    check_injective(sigma, n);
    check_covers(sigma, n, 1000);
  }
}

TEST_CASE("identity and table rules") {
  CHECK(Permutation::identity()(7) == 7);
  Permutation swap = Permutation::from_table({2, 1});
  CHECK(swap(1) == 2);
  CHECK(swap(2) == 1);
  CHECK(swap(3) == 3);  // identity tail
  CHECK(swap(1000) == 1000);

  CHECK_THROWS_AS(Permutation::from_table({1, 1}), validation_error);
  CHECK_THROWS_AS(Permutation::from_table({2, 3}), validation_error);
  CHECK_THROWS_AS(Permutation::from_table({0, 1}), validation_error);

  // Composing with the inverse table is the identity on the support.
  std::vector<std::uint64_t> table{3, 1, 4, 2};
  Permutation sigma = Permutation::from_table(table);
  std::vector<std::uint64_t> inverse(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) inverse[table[i] - 1] = i + 1;
  Permutation sigma_inv = Permutation::from_table(inverse);
  for (std::uint64_t k = 1; k <= 10; ++k) CHECK(sigma_inv(sigma(k)) == k);
}

TEST_CASE("block interleave layout") {
  Permutation p4 = Permutation::block_interleave(4);
  CHECK(p4(2) == 3);
  CHECK(prefix_image(p4, 8) == std::vector<std::uint64_t>{1, 3, 2, 4, 5, 7, 6, 8});

  // block length 2 puts the lone odd offset first, then the even: identity.
  Permutation p2 = Permutation::block_interleave(2);
  for (std::uint64_t k = 1; k <= 100; ++k) CHECK(p2(k) == k);

  Permutation p6 = Permutation::block_interleave(6);
  CHECK(prefix_image(p6, 6) == std::vector<std::uint64_t>{1, 3, 5, 2, 4, 6});

  Permutation e4 = Permutation::block_interleave(4, InterleaveSplit::evens_first);
  CHECK(prefix_image(e4, 4) == std::vector<std::uint64_t>{2, 4, 1, 3});

  CHECK_THROWS_AS(Permutation::block_interleave(3), validation_error);
  CHECK_THROWS_AS(Permutation::block_interleave(0), validation_error);
}

TEST_CASE("window selector layout") {
  Permutation w2 = Permutation::window_selector(2);
  CHECK(prefix_image(w2, 4) == std::vector<std::uint64_t>{1, 3, 2, 4});

  Permutation w3 = Permutation::window_selector(3);
  CHECK(prefix_image(w3, 9) ==
        std::vector<std::uint64_t>{1, 4, 7, 2, 3, 5, 6, 8, 9});

  CHECK_THROWS_AS(Permutation::window_selector(1), validation_error);
  CHECK_THROWS_AS(Permutation::window_selector(0), validation_error);

  // Blocks after the first emit stride^2 - 1 fresh selected values and one
  // deferred value; check the stated split for stride 2, block 1.
  CHECK(prefix_image(w2, 8) == std::vector<std::uint64_t>{1, 3, 2, 4, 5, 7, 9, 6});
}

TEST_CASE("window selector prefixes are selected-heavy at block boundaries") {
  // Block 0 holds stride selected values; every later block of length
  // stride^2 adds stride^2 - 1 selected values and one deferred value, so the
  // selected front runs ahead of the deferred backlog.
  for (std::uint64_t stride : {2ULL, 3ULL, 5ULL}) {
    Permutation w = Permutation::window_selector(stride);
    std::uint64_t L = stride * stride;
    for (std::uint64_t b = 1; b <= 5; ++b) {
      std::uint64_t n = (b + 1) * L;
      std::uint64_t selected = 0;
      for (std::uint64_t k = 1; k <= n; ++k)
        if (w(k) % stride == 1) ++selected;
      CHECK(selected == stride + b * (L - 1));
    }
  }
}

TEST_CASE("describe strings identify the rule") {
  CHECK(Permutation::identity().describe() == "identity");
  CHECK(Permutation::block_interleave(4).describe() == "interleave:4");
  CHECK(Permutation::block_interleave(4, InterleaveSplit::evens_first).describe() ==
        "interleave:4:evens");
  CHECK(Permutation::window_selector(2).describe() == "window:2");
  CHECK(Permutation::from_table({2, 1, 3}).describe() == "table:3");
}

TEST_CASE("table permutations load from files") {
  auto path = std::filesystem::temp_directory_path() / "lacunary_perm_table.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n2\n1\n3\n";
  }
  Permutation sigma = load_table_permutation(path);
  CHECK(sigma(1) == 2);
  CHECK(sigma(2) == 1);
  CHECK(sigma(3) == 3);
  CHECK(sigma(9) == 9);
  {
    std::ofstream out(path);
    out << "2\n2\n";
  }
  CHECK_THROWS_AS(load_table_permutation(path), validation_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_table_permutation(path), validation_error);
}
