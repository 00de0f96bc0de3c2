#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "augmap/interval_map.h"
#include "augmap/inverted_index.h"
#include "augmap/lis.h"
#include "augmap/map.h"
#include "augmap/parallel.h"
#include "augmap/range_map.h"

namespace py = pybind11;
using namespace augmap;

namespace {

struct py_sum_entry {
  using key_t = std::int64_t;
  using val_t = std::int64_t;
  using aug_t = std::int64_t;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return 0; }
  static aug_t from_entry(const key_t&, const val_t& v) { return v; }
  static aug_t combine(const aug_t& a, const aug_t& b) { return a + b; }
};

using sum_map = aug_map<py_sum_entry>;
using ivmap = interval_map<std::int64_t>;
using rmap = range_map<std::int64_t, std::int64_t>;

}  // namespace

PYBIND11_MODULE(augmap, m) {
  m.doc() = "Persistent parallel augmented ordered maps";

  m.def("set_workers",
        [](unsigned n) { parallel::scheduler::get().set_workers(n); },
        py::arg("n"), "set the fork-join worker count");

  py::class_<sum_map>(m, "SumMap")
      .def(py::init<>())
      .def_static(
          "build",
          [](const std::vector<std::pair<std::int64_t, std::int64_t>>& entries) {
            return sum_map::build(entries);
          },
          py::arg("entries"), "build from (key, value) pairs; later duplicates win")
      .def("__len__", &sum_map::size)
      .def("find", [](const sum_map& m2, std::int64_t k) { return m2.find(k); })
      .def("insert",
           [](const sum_map& m2, std::int64_t k, std::int64_t v) { return m2.insert(k, v); },
           "a new map with the entry set; this map is unchanged")
      .def("erase", [](const sum_map& m2, std::int64_t k) { return m2.erase(k); })
      .def("aug_val", [](const sum_map& m2) { return m2.aug_val(); })
      .def("aug_left", [](const sum_map& m2, std::int64_t k) { return m2.aug_left_incl(k); },
           "sum over keys <= k")
      .def("aug_range",
           [](const sum_map& m2, std::int64_t lo, std::int64_t hi) {
             return m2.aug_range(lo, hi);
           })
      .def("range",
           [](const sum_map& m2, std::int64_t lo, std::int64_t hi) {
             return m2.range(lo, hi);
           })
      .def("rank", [](const sum_map& m2, std::int64_t k) { return m2.rank(k); })
      .def("select", [](const sum_map& m2, std::size_t i) { return m2.select(i); })
      .def("entries", [](const sum_map& m2) { return m2.entries(); })
      .def_static("union_",
                  [](const sum_map& a, const sum_map& b) { return map_union(a, b); })
      .def_static("intersect",
                  [](const sum_map& a, const sum_map& b) { return map_intersect(a, b); })
      .def_static("difference",
                  [](const sum_map& a, const sum_map& b) { return map_difference(a, b); });

  py::class_<ivmap>(m, "IntervalMap")
      .def(py::init<>())
      .def_static(
          "build",
          [](const std::vector<std::pair<std::int64_t, std::int64_t>>& ivs) {
            return ivmap::build(ivs);
          },
          py::arg("intervals"))
      .def("__len__", &ivmap::size)
      .def("insert", [](const ivmap& m2, std::int64_t l, std::int64_t r) {
        return m2.insert({l, r});
      })
      .def("erase", &ivmap::erase)
      .def("stab", &ivmap::stab)
      .def("report_all", &ivmap::report_all);

  py::class_<rmap>(m, "RangeMap")
      .def(py::init<>())
      .def_static(
          "build",
          [](const std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>>& pts) {
            std::vector<rmap::weighted_point> wp;
            wp.reserve(pts.size());
            for (auto& [x, y, w] : pts) wp.push_back({{x, y}, w});
            return rmap::build(wp);
          },
          py::arg("points"), "build from (x, y, weight) triples")
      .def("__len__", &rmap::size)
      .def("sum", &rmap::sum, py::arg("xl"), py::arg("xr"), py::arg("yl"), py::arg("yr"))
      .def("report",
           [](const rmap& m2, std::int64_t xl, std::int64_t xr, std::int64_t yl,
              std::int64_t yr) {
             std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
             for (auto& pw : m2.report(xl, xr, yl, yr))
               out.emplace_back(pw.first.first, pw.first.second, pw.second);
             return out;
           });

  py::class_<posting_list>(m, "PostingList")
      .def(py::init<>())
      .def("__len__", &posting_list::size)
      .def("entries", [](const posting_list& p) { return p.entries(); })
      .def("max_weight", [](const posting_list& p) { return p.aug_val(); });

  py::class_<inverted_index>(m, "InvertedIndex")
      .def(py::init<>())
      .def_static(
          "build",
          [](const std::vector<std::tuple<std::string, std::int64_t, double>>& triples) {
            std::vector<inverted_index::triple> ts;
            ts.reserve(triples.size());
            for (auto& [t, d, w] : triples) ts.push_back({t, d, w});
            return inverted_index::build(std::move(ts));
          },
          py::arg("triples"), "build from (term, doc, weight) triples")
      .def("term_count", &inverted_index::term_count)
      .def("get", &inverted_index::get)
      .def_static("q_and", &inverted_index::q_and)
      .def_static("q_or", &inverted_index::q_or)
      .def_static("q_and_not", &inverted_index::q_and_not)
      .def_static("top_k", &inverted_index::top_k, py::arg("postings"), py::arg("k"));

  m.def(
      "lis_count",
      [](const std::vector<std::int64_t>& seq) { return lis_count(seq); },
      py::arg("sequence"),
      "(length, count) of the longest strictly increasing subsequence");
}
