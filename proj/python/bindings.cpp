// Python module _cremona. Maps, points and words cross the boundary in the
// same text formats the command-line tool reads and prints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cremona/amalgam.hpp"
#include "cremona/error.hpp"
#include "cremona/textio.hpp"
#include "cremona/wordio.hpp"

namespace py = pybind11;
using namespace cremona;

namespace {

std::vector<std::string> strs(const std::array<BubblePoint, 3>& pts) {
  return {pts[0].str(), pts[1].str(), pts[2].str()};
}

std::vector<BirMap> maps_of(const std::vector<std::string>& texts) {
  std::vector<BirMap> out;
  for (const auto& t : texts) out.push_back(parse_map(t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_cremona, m) {
  m.doc() = "Exact plane Cremona maps over the rationals";

  static py::exception<Error> error(m, "CremonaError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("compose", [](const std::vector<std::string>& maps) {
    std::vector<BirMap> ms = maps_of(maps);
    py::gil_scoped_release release;
    return to_string(compose(ms));
  }, py::arg("maps"), "Product of the maps, leftmost applied last.");

  m.def("inverse", [](const std::string& f) {
    BirMap g = parse_map(f);
    py::gil_scoped_release release;
    return to_string(inverse(g));
  }, py::arg("map"));

  m.def("degree", [](const std::string& f) { return parse_map(f).degree(); }, py::arg("map"));

  m.def("apply", [](const std::string& f, const std::string& p) {
    return apply(parse_map(f), parse_point(p)).str();
  }, py::arg("map"), py::arg("point"));

  m.def("fbullet", [](const std::string& f, const std::string& p) {
    return fbullet(parse_map(f), parse_bubble(p)).str();
  }, py::arg("map"), py::arg("point"), "Image of a point, possibly infinitely near.");

  m.def("basepoints", [](const std::string& f) {
    ConsistentBasepoints cb = basepoints_quadratic(parse_map(f));
    py::dict d;
    d["sigma"] = cb.i;
    d["source"] = strs(cb.source);
    d["target"] = strs(cb.target);
    return d;
  }, py::arg("map"));

  m.def("is_dejonquieres", [](const std::string& f) { return is_dejonquieres(parse_map(f)); },
        py::arg("map"));

  m.def("classify", [](const std::string& f) { return classify_subgroups(parse_map(f)).str(); },
        py::arg("map"), "Subgroups containing the map, e.g. 'F2, deJonquieres'.");

  m.def("factor", [](const std::string& f) {
    QuadraticFactorization q = factor_quadratic(parse_map(f));
    py::dict d;
    d["beta"] = q.beta.str();
    d["sigma"] = q.i;
    d["alpha"] = q.alpha.str();
    return d;
  }, py::arg("map"));

  m.def("factor_dj", [](const std::string& f) {
    DJFactorization q = factor_quadratic_dJ(parse_map(f));
    py::dict d;
    d["alpha2"] = q.alpha2.str();
    d["tau"] = std::string(dj_kind_name(q.kind));
    d["alpha1"] = q.alpha1.str();
    return d;
  }, py::arg("map"));

  m.def("decompose_dj", [](const std::string& f) {
    BirMap g = parse_map(f);
    std::vector<std::string> out;
    {
      py::gil_scoped_release release;
      for (const auto& p : decompose_dejonquieres(g)) out.push_back(to_string(p));
    }
    return out;
  }, py::arg("map"));

  m.def("system", [](const std::vector<std::string>& letters) {
    return system_of_word(maps_of(letters)).str();
  }, py::arg("letters"), "Image of the system of lines under the product of the letters.");

  m.def("reduce_word", [](const std::string& word_text, std::uint64_t seed) {
    Word w = parse_word(word_text);
    RewriteTrace t;
    std::string replay;
    {
      py::gil_scoped_release release;
      t = reduce_identity_word(w, {seed});
      replay = replay_trace(t);
    }
    if (!replay.empty()) throw Error(ErrorKind::InvariantViolation, "trace replay failed: " + replay);
    py::list cs;
    for (const auto& c : t.complexities) cs.append(py::make_tuple(c.D, c.N));
    py::dict d;
    d["rounds"] = t.rounds;
    d["steps"] = t.steps.size();
    d["resamples"] = t.resamples;
    d["complexities"] = cs;
    d["trace"] = t.str();
    return d;
  }, py::arg("word"), py::arg("seed") = 0,
     "Rewrites an identity word (word-file text) to the empty word.");

  m.def("verify_presentation", [](int samples, std::uint64_t seed) {
    PresentationReport r;
    {
      py::gil_scoped_release release;
      r = verify_presentation(samples, seed);
    }
    py::dict d;
    for (const auto& f : r.families) d[py::str(f.name)] = py::make_tuple(f.passed, f.total);
    return d;
  }, py::arg("samples") = 20, py::arg("seed") = 0);
}
