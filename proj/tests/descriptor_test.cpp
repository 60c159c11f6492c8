#include <gtest/gtest.h>

#include "rank1/corpus.hpp"
#include "rank1/descriptor.hpp"

using namespace rank1;

TEST(Descriptor, RoundTrip)
{
  for (std::string s : {"psl2:13/coset:d-minus", "pgammal2:9", "sz:8/coset:torus-plus", "frob:7:2",
                        "psl2:9/ext:delta*phi", "psl2:17/coset:s4:1", "psu3:3/coset:l2-7", "sym:5"})
    EXPECT_EQ(parse_descriptor(s).to_string(), s);
}

TEST(Descriptor, StrictErrorsNameTheToken)
{
  auto message = [](std::string const &s) {
    try {
      parse_descriptor(s);
    } catch (DescriptorError const &e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  EXPECT_NE(message("psl3:7").find("psl3"), std::string::npos);
  EXPECT_NE(message("psl2:13/coset:d-middle").find("d-middle"), std::string::npos);
  EXPECT_NE(message("psl2:x").find("'x'"), std::string::npos);
  EXPECT_NE(message("psl2:13/orbit:3").find("orbit:3"), std::string::npos);
  EXPECT_NE(message("sz:8/ext:phi").find("ext"), std::string::npos);
  EXPECT_EQ(message(""), "descriptor: empty");
  EXPECT_NE(message("frob:7").find("parameter"), std::string::npos);
  EXPECT_NE(message("psl2:13/coset:d-minus/coset:borel").find("second"), std::string::npos);
}

TEST(Descriptor, BuildsWhatItNames)
{
  EXPECT_EQ(build_action("psl2:13/coset:d-minus").action.degree(), 91u);
  EXPECT_EQ(build_action("pgammal2:9").action.group.order(), 1440u);
  EXPECT_EQ(build_action("psl2:9/ext:delta*phi").action.group.order(), 720u);
  EXPECT_EQ(build_action("sz:8/coset:torus-plus").action.degree(), 560u);
  EXPECT_EQ(build_action("frob:7:2").action.group.order(), 21u);
  EXPECT_THROW(build_action("psl2:8/coset:subfield:2"), InadmissibleKey);
  EXPECT_THROW(build_action("frob:7:3"), std::invalid_argument);
}

TEST(Corpus, GroupsBetweenSocleAndAut)
{
  // Out(PSL2(9)) = 2 x 2 has five subgroups; Out(PSL2(8)) = 3 has two
  EXPECT_EQ(line_groups_between(9).size(), 5u);
  EXPECT_EQ(line_groups_between(8).size(), 2u);
  EXPECT_EQ(line_groups_between(7).size(), 2u);
  std::set<std::uint64_t> orders;
  for (auto const &d : line_groups_between(9))
    orders.insert(build_action(d).action.group.order());
  EXPECT_EQ(orders, (std::set<std::uint64_t>{360, 720, 1440}));
}

TEST(Corpus, PrimitivityIsRecomputed)
{
  auto entries = line_corpus(7);
  ASSERT_FALSE(entries.empty());
  std::size_t primitive = 0;
  for (auto const &e : entries)
    primitive += e.primitive;
  EXPECT_GT(primitive, 0u);
  EXPECT_LT(primitive, entries.size());  // d-minus at q = 7 is not maximal
}
