#include "doctest.h"
#include "helpers.hpp"

using namespace slat;
using namespace slat::testing;

TEST_SUITE("net-format") {

TEST_CASE("fixture file parses to the expected document") {
  NetDocument doc = load_fixture("feedback.net");
  CHECK(doc.net == feedback_net());
  REQUIRE(doc.initial_marking.has_value());
  CHECK(*doc.initial_marking == Marking({3, 1, 0}));
}

TEST_CASE("arc weight defaults to 1") {
  NetDocument doc = parse_net("net n\nplaces p\ntransitions t\narc p t\n");
  CHECK(doc.net.input_weight(0, 0) == 1);
  CHECK(doc.net.output_weight(0, 0) == 0);
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_error = [](const std::string& text, int line) {
    try {
      parse_net(text);
      FAIL("expected parse_error for: ", text);
    } catch (const parse_error& e) {
      CHECK(e.line == line);
    }
  };
  expect_error("net n\nplaces p1 p2\ntransitions t\narc p1 p2 1\n", 4);  // place-place arc
  expect_error("net n\nplaces p\ntransitions t\narc t t\n", 4);          // transition-transition
  expect_error("net n\nplaces p\ntransitions t\narc p q\n", 4);          // unknown id
  expect_error("net n\nplaces p p\ntransitions t\n", 2);                 // duplicate
  expect_error("net n\nplaces p\ntransitions t\narc p t -1\n", 4);       // bad weight
  expect_error("net n\nplaces p\ntransitions t\nmarking p=x\n", 4);      // bad count
}

TEST_CASE("CRLF and comments are accepted") {
  NetDocument doc = parse_net("# header\r\nnet n\r\nplaces p # trailing\r\ntransitions t\r\n");
  CHECK(doc.net.place_count() == 1);
}

TEST_CASE("round-trip identity on the fixtures") {
  for (const char* f : {"feedback.net", "drain.net", "doubling.net"}) {
    NetDocument doc = load_fixture(f);
    CHECK(parse_net(serialize_net(doc)) == doc);
  }
}

TEST_CASE("round-trip identity on the empty net") {
  NetDocument doc;
  doc.net = Net("void", {}, {});
  CHECK(parse_net(serialize_net(doc)) == doc);
}

TEST_CASE("round-trip identity on 100 random documents") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    NetDocument doc;
    doc.net = random_net(rng, 4, 4, 3);
    if (rng() % 2) doc.initial_marking = random_marking(rng, doc.net.place_count(), 5);
    if (rng() % 3 == 0) doc.metadata["k" + std::to_string(i)] = "v";
    CHECK(parse_net(serialize_net(doc)) == doc);
  }
}

TEST_CASE("parsing fuzzed bytes never crashes") {
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    std::string junk;
    std::size_t len = rng() % 80;
    for (std::size_t j = 0; j < len; ++j) junk.push_back(static_cast<char>(rng() % 256));
    try {
      (void)parse_net(junk);
    } catch (const parse_error&) {
    }
  }
}

TEST_CASE("marking literals") {
  Net n = feedback_net();
  CHECK(parse_marking_literal(n, "p1=3,p2=1") == Marking({3, 1, 0}));
  CHECK(parse_marking_literal(n, "") == Marking::zero(3));
  CHECK_THROWS_AS(parse_marking_literal(n, "zz=1"), input_error);
}

}  // TEST_SUITE
