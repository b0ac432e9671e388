#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "balance/edge_list.hpp"
#include "balance/generators.hpp"

using namespace balance;

TEST(EdgeList, ParsesAllSignTokensAndComments) {
  const auto g = parse_edge_list(
      "# a comment\n"
      "0 1 +1\n"
      "\n"
      "1 2 -\n"
      "   # indented comment\n"
      "0 2 +\n"
      "2 3 -1\n");
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 4u);
  EXPECT_EQ(g.negative_count(), 2u);
}

TEST(EdgeList, HeaderFixesVertexCount) {
  const auto g = parse_edge_list("N 10\n0 1 +1\n");
  EXPECT_EQ(g.vertex_count(), 10u);
  EXPECT_EQ(parse_edge_list("N 5\n").edge_count(), 0u);
  EXPECT_THROW(parse_edge_list("N 2\n0 3 +1\n"), ValidationError);
}

TEST(EdgeList, ErrorsCarryLineNumbers) {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_edge_list(text);
    } catch (const ValidationError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("0 1 +1\n1 2 x\n"), 2u);
  EXPECT_EQ(line_of("# c\n0 1\n"), 2u);
  EXPECT_EQ(line_of("0 1 +1\n1 1 +1\n"), 2u);
  EXPECT_EQ(line_of("0 1 +1\n\n1 0 -1\n"), 3u);
  EXPECT_EQ(line_of("a 1 +1\n"), 1u);
  EXPECT_EQ(line_of("0 1 +2\n"), 1u);
  EXPECT_EQ(line_of("N x\n"), 1u);
}

TEST(EdgeList, WriteReadRoundTrip) {
  Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    const auto base = gen_er_gnm(15, 30, rng);
    const auto g = sign_uniform(base, 0.3, rng);
    std::stringstream buf;
    write_edge_list(buf, g);
    EXPECT_EQ(parse_edge_list(buf), g);
  }
}

TEST(EdgeList, FileRoundTripAndMissingFile) {
  const auto path = std::filesystem::temp_directory_path() / "balance_edge_list_test.txt";
  const auto g = from_edge_list(6, {{0, 1, +1}, {4, 5, -1}});
  write_edge_list(path, g);
  EXPECT_EQ(read_edge_list(path), g);
  std::filesystem::remove(path);
  EXPECT_THROW(read_edge_list(path), std::runtime_error);
}
