#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "srlab/io.hpp"
#include "srlab/json_report.hpp"
#include "support.hpp"

using namespace srlab;
using srlab::test::Gen;

TEST_CASE("matrix market reader") {
  std::istringstream real(
      "%%MatrixMarket matrix array real general\n% comment\n2 3\n1\n2\n3\n4\n5\n6\n");
  const Matrix a = read_matrix_market(real);
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a(1, 0).real() == 2.0);
  CHECK(a(0, 1).real() == 3.0);
  CHECK(a.is_real());

  std::istringstream sym("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n");
  const Matrix s = read_matrix_market(sym);
  CHECK(s(0, 1).real() == 2.0);
  CHECK(s(1, 0).real() == 2.0);
  CHECK(s(1, 1).real() == 3.0);

  std::istringstream herm("%%MatrixMarket matrix array complex hermitian\n2 2\n1 0\n2 1\n3 0\n");
  const Matrix h = read_matrix_market(herm);
  CHECK(h(1, 0) == Complex(2, 1));
  CHECK(h(0, 1) == Complex(2, -1));
  CHECK_FALSE(h.is_real());

  std::istringstream integer("%%MatrixMarket matrix array integer general\n1 2\n7\n-3\n");
  CHECK(read_matrix_market(integer)(0, 1).real() == -3.0);
}

TEST_CASE("matrix market reader rejects malformed input") {
  const char* bad[] = {
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n",
      "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n",
      "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\nx\n",
      "%%MatrixMarket matrix array real general\n0 2\n",
      "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n5\n",
      "%%MatrixMarket matrix array real general\n1 1\nnan\n",
      "not a header\n1 1\n1\n",
  };
  for (const char* text : bad) {
    INFO(text);
    std::istringstream in(text);
    CHECK_THROWS_AS(read_matrix_market(in), Error);
  }
}

TEST_CASE("csv reader") {
  std::istringstream in("1, 2, 3\n4,5,6\n\n");
  const Matrix a = read_csv(in);
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a(1, 2).real() == 6.0);
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_csv(ragged), ParseError);
  std::istringstream junk("1,abc\n");
  CHECK_THROWS_AS(read_csv(junk), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), ParseError);
  CHECK_THROWS(read_matrix("/nonexistent/file.mtx"));
}

TEST_CASE("property: matrix market round trip is exact") {
  Gen g(17);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = g.general(g.dim(1, 7), g.dim(1, 7), g.field());
    std::stringstream buf;
    write_matrix_market(buf, a);
    const Matrix b = read_matrix_market(buf);
    CHECK(b.field() == a.field());
    CHECK((b.entries() - a.entries()).norm() == 0.0);
  }
}

TEST_CASE("non-finite doubles survive encoding") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(encode_double(inf) == "inf");
  CHECK(encode_double(-inf) == "-inf");
  CHECK(encode_double(std::nan("")) == "nan");
  CHECK(decode_double(encode_double(inf)) == inf);
  CHECK(decode_double(encode_double(-inf)) == -inf);
  CHECK(std::isnan(decode_double(encode_double(std::nan("")))));
  CHECK(decode_double(encode_double(0.1)) == 0.1);
  CHECK_THROWS(decode_double(Json("x")));
}

TEST_CASE("property: check reports round trip losslessly") {
  Gen g(23);
  for (int t = 0; t < 50; ++t) {
    CheckReport r;
    r.name = "check_perturbation";
    r.lhs = g.uniform(-1e3, 1e3);
    r.rhs = t % 5 == 0 ? std::numeric_limits<double>::infinity() : g.uniform(-1e3, 1e3);
    r.slack = r.rhs - r.lhs;
    r.holds = g.coin();
    r.preconditions_met = g.coin();
    r.details = {{"p", t % 3 == 0 ? std::numeric_limits<double>::infinity() : g.uniform(1, 10)},
                 {"tiny", std::ldexp(g.uniform(1, 2), -1070)},
                 {"epsilon", g.uniform(0, 1)}};
    r.note = "binding side: general_upper";
    const Json j = to_json(r);
    CHECK(j.at("schema") == 1);
    const CheckReport back = check_report_from_json(Json::parse(j.dump()));
    CHECK(back.name == r.name);
    CHECK(back.lhs == r.lhs);
    CHECK(back.rhs == r.rhs);
    CHECK(back.slack == r.slack);
    CHECK(back.holds == r.holds);
    CHECK(back.preconditions_met == r.preconditions_met);
    CHECK(back.details == r.details);
    CHECK(back.note == r.note);
    CHECK(to_json(back).dump() == j.dump());
  }
  Json wrong = to_json(CheckReport{});
  wrong["schema"] = 2;
  CHECK_THROWS(check_report_from_json(wrong));
}
