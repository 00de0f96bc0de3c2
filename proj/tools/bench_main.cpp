#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "augmap/bench/gen.h"
#include "augmap/bench/runner.h"
#include "augmap/interval_map.h"
#include "augmap/inverted_index.h"
#include "augmap/lis.h"
#include "augmap/parallel.h"
#include "augmap/range_map.h"

namespace {

using namespace augmap;

std::vector<std::int64_t> read_ints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::vector<std::int64_t> out;
  std::int64_t v;
  while (in >> v) out.push_back(v);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> read_pairs(const std::string& path) {
  auto flat = read_ints(path);
  if (flat.size() % 2) throw CLI::ValidationError("odd number of integers in " + path);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::size_t i = 0; i < flat.size(); i += 2) out.emplace_back(flat[i], flat[i + 1]);
  return out;
}

std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> read_triples(
    const std::string& path) {
  auto flat = read_ints(path);
  if (flat.size() % 3) throw CLI::ValidationError("triple count mismatch in " + path);
  std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> out;
  for (std::size_t i = 0; i < flat.size(); i += 3)
    out.push_back({{flat[i], flat[i + 1]}, flat[i + 2]});
  return out;
}

std::vector<inverted_index::triple> read_index_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::vector<inverted_index::triple> out;
  std::string term;
  std::int64_t doc;
  double w;
  while (in >> term >> doc >> w) out.push_back({term, doc, w});
  return out;
}

void print_record(const augmap::bench::bench_record& r) {
  std::cout << "op=" << r.config.op << " n=" << r.config.n << " m=" << r.config.m
            << " threads=" << r.config.threads << " scheme=" << scheme_name(r.config.scheme)
            << " median_ns=" << r.time_ns << " comparisons=" << r.comparisons
            << " allocated=" << r.nodes_allocated << " freed=" << r.nodes_freed
            << " peak_live=" << r.peak_live_nodes;
  if (r.speedup) std::cout << " speedup=" << *r.speedup;
  if (!r.ok) std::cout << " FAILED(" << r.note << ")";
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"augmap benchmark and application driver"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  unsigned threads = 1;
  std::uint64_t seed = 42;
  std::string scheme_str = "wb";
  app.add_option("--threads", threads, "worker count")
      ->envname("AUGMAP_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "rng seed");
  app.add_option("--scheme", scheme_str, "balancing scheme")
      ->check(CLI::IsMember({"wb", "weight-balanced", "treap"}));

  // bench <op>
  auto* bench_cmd = app.add_subcommand("bench", "run one instrumented benchmark");
  std::string op;
  std::size_t n = std::size_t(1) << 16;
  std::size_t m = std::size_t(1) << 10;
  unsigned rounds = 5;
  std::string csv_path;
  bool matrix = false;
  bench_cmd->add_option("op", op, "operation name")->required();
  bench_cmd->add_option("--n", n, "main input size");
  bench_cmd->add_option("--m", m, "secondary size / query count");
  bench_cmd->add_option("--rounds", rounds, "repetitions (median reported)")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", csv_path, "csv output path");
  bench_cmd->add_flag("--matrix", matrix,
                      "sweep the default matrix: n in {2^16, 2^20}, m in {2^6, 2^10, "
                      "2^16, 2^20}");

  // interval
  auto* interval_cmd = app.add_subcommand("interval", "interval stabbing queries");
  std::string interval_file;
  std::size_t interval_n = 1000;
  std::vector<std::int64_t> stabs;
  std::vector<std::int64_t> reports;
  interval_cmd->add_option("--file", interval_file, "whitespace-separated l r pairs");
  interval_cmd->add_option("--n", interval_n, "generate this many intervals instead");
  interval_cmd->add_option("--stab", stabs, "point(s) to stab");
  interval_cmd->add_option("--report", reports, "point(s) to report all intervals for");

  // range2d
  auto* range_cmd = app.add_subcommand("range2d", "weighted 2d range queries");
  std::string range_file;
  std::size_t range_n = 1000;
  std::vector<std::int64_t> sum_rect;
  std::vector<std::int64_t> report_rect;
  range_cmd->add_option("--file", range_file, "whitespace-separated x y w triples");
  range_cmd->add_option("--n", range_n, "generate this many points instead");
  range_cmd->add_option("--sum", sum_rect, "xl xr yl yr rectangle weight sum")
      ->expected(4);
  range_cmd->add_option("--report", report_rect, "xl xr yl yr rectangle point report")
      ->expected(4);

  // index
  auto* index_cmd = app.add_subcommand("index", "weighted inverted index queries");
  std::string index_file;
  std::size_t index_n = 1000;
  std::vector<std::string> and_terms, or_terms, andnot_terms;
  std::string single_term;
  std::size_t topk = 10;
  index_cmd->add_option("--file", index_file, "lines of: term doc weight");
  index_cmd->add_option("--n", index_n, "generate this many triples instead");
  index_cmd->add_option("--and", and_terms, "two terms, intersect")->expected(2);
  index_cmd->add_option("--or", or_terms, "two terms, union")->expected(2);
  index_cmd->add_option("--andnot", andnot_terms, "two terms, difference")->expected(2);
  index_cmd->add_option("--term", single_term, "single term lookup");
  index_cmd->add_option("--topk", topk, "how many top documents to print");

  // lis
  auto* lis_cmd = app.add_subcommand("lis", "longest increasing subsequence length+count");
  std::string lis_file;
  std::size_t lis_n = 1000;
  lis_cmd->add_option("--file", lis_file, "whitespace-separated integers");
  lis_cmd->add_option("--n", lis_n, "generate this many elements instead");

  CLI11_PARSE(app, argc, argv);

  auto scheme = *augmap::bench::parse_scheme(scheme_str);
  parallel::scheduler::get().set_workers(threads);

  try {
    if (*bench_cmd) {
      augmap::bench::bench_config cfg;
      cfg.op = op;
      cfg.threads = threads;
      cfg.rounds = rounds;
      cfg.seed = seed;
      cfg.scheme = scheme;
      std::vector<augmap::bench::bench_record> records;
      if (matrix) {
        const bool uses_m = op == "union" || op == "find" || op == "multi-insert" ||
                            op == "range" || op == "aug-left" || op == "aug-range" ||
                            op == "aug-filter";
        for (std::size_t nn : {std::size_t(1) << 16, std::size_t(1) << 20}) {
          cfg.n = nn;
          if (!uses_m) {
            cfg.m = 0;
            records.push_back(augmap::bench::run_bench(cfg));
            print_record(records.back());
            continue;
          }
          for (std::size_t mm : {std::size_t(1) << 6, std::size_t(1) << 10,
                                 std::size_t(1) << 16, std::size_t(1) << 20}) {
            cfg.m = mm;
            records.push_back(augmap::bench::run_bench(cfg));
            print_record(records.back());
          }
        }
      } else {
        cfg.n = n;
        cfg.m = m;
        records.push_back(augmap::bench::run_bench(cfg));
        print_record(records.back());
      }
      if (!csv_path.empty()) augmap::bench::emit_csv(records, csv_path);
      for (const auto& r : records)
        if (!r.ok) return 1;
      return 0;
    }

    if (*interval_cmd) {
      auto ivs = interval_file.empty() ? augmap::bench::gen_intervals(interval_n, seed)
                                       : read_pairs(interval_file);
      auto m2 = interval_map<>::build(ivs);
      std::cout << "intervals=" << m2.size();
      if (auto mx = m2.max_right()) std::cout << " max_right=" << *mx;
      std::cout << "\n";
      for (auto p : stabs) std::cout << "stab " << p << " -> " << (m2.stab(p) ? "true" : "false") << "\n";
      for (auto p : reports) {
        auto hits = m2.report_all(p);
        std::cout << "report " << p << " ->";
        for (auto& iv : hits) std::cout << " [" << iv.first << "," << iv.second << "]";
        std::cout << "\n";
      }
      return 0;
    }

    if (*range_cmd) {
      auto pts = range_file.empty() ? augmap::bench::gen_points(range_n, seed)
                                    : read_triples(range_file);
      auto rm = range_map<>::build(pts);
      std::cout << "points=" << rm.size() << " total_weight=" << rm.total_weight() << "\n";
      if (!sum_rect.empty())
        std::cout << "sum -> " << rm.sum(sum_rect[0], sum_rect[1], sum_rect[2], sum_rect[3])
                  << "\n";
      if (!report_rect.empty()) {
        auto hits = rm.report(report_rect[0], report_rect[1], report_rect[2], report_rect[3]);
        std::cout << "report ->";
        for (auto& pw : hits)
          std::cout << " (" << pw.first.first << "," << pw.first.second << ")w" << pw.second;
        std::cout << "\n";
      }
      return 0;
    }

    if (*index_cmd) {
      auto triples = index_file.empty() ? augmap::bench::gen_triples(index_n, seed)
                                        : read_index_file(index_file);
      auto idx = inverted_index::build(std::move(triples));
      std::cout << "terms=" << idx.term_count() << "\n";
      posting_list result;
      bool have = false;
      if (!and_terms.empty()) {
        result = inverted_index::q_and(idx.get(and_terms[0]), idx.get(and_terms[1]));
        have = true;
      } else if (!or_terms.empty()) {
        result = inverted_index::q_or(idx.get(or_terms[0]), idx.get(or_terms[1]));
        have = true;
      } else if (!andnot_terms.empty()) {
        result = inverted_index::q_and_not(idx.get(andnot_terms[0]), idx.get(andnot_terms[1]));
        have = true;
      } else if (!single_term.empty()) {
        result = idx.get(single_term);
        have = true;
      }
      if (have) {
        std::cout << "postings=" << result.size() << "\n";
        for (auto& dw : inverted_index::top_k(result, topk))
          std::cout << "doc " << dw.first << " weight " << dw.second << "\n";
      }
      return 0;
    }

    if (*lis_cmd) {
      auto seq = lis_file.empty() ? augmap::bench::gen_sequence(lis_n, seed)
                                  : read_ints(lis_file);
      auto [len, cnt] = lis_count(seq);
      std::cout << "length=" << len << " count=" << cnt << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
