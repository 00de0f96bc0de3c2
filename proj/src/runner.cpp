#include "augmap/bench/runner.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <new>
#include <random>
#include <sstream>
#include <stdexcept>

#include "augmap/bench/gen.h"
#include "augmap/bench/model.h"
#include "augmap/map.h"
#include "augmap/parallel.h"
#include "augmap/stats.h"

namespace augmap::bench {

namespace {

struct sum_entry {
  using key_t = std::int64_t;
  using val_t = std::int64_t;
  using aug_t = std::int64_t;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return 0; }
  static aug_t from_entry(const key_t&, const val_t& v) { return v; }
  static aug_t combine(const aug_t& a, const aug_t& b) { return a + b; }
};

struct max_entry {
  using key_t = std::int64_t;
  using val_t = std::int64_t;
  using aug_t = std::int64_t;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return -1; }  // values are >= 0 in the harness
  static aug_t from_entry(const key_t&, const val_t& v) { return v; }
  static aug_t combine(const aug_t& a, const aug_t& b) { return b > a ? b : a; }
};

struct round_run {
  std::uint64_t ns = 0;
  stats::totals delta;
  std::int64_t peak_live = 0;
  bool ok = true;
  std::string note;
};

using clock_type = std::chrono::steady_clock;

std::uint64_t since_ns(clock_type::time_point t0) {
  return std::uint64_t(
      std::chrono::duration_cast<std::chrono::nanoseconds>(clock_type::now() - t0).count());
}

bool oracle_sized(const bench_config& cfg) {
  std::size_t m = cfg.m ? cfg.m : 1;
  return cfg.n * m <= (std::size_t(1) << 18);
}

std::vector<std::int64_t> query_keys(std::size_t m, std::uint64_t seed) {
  auto e = gen_keys(m, seed ^ 0x5bd1e9955bd1e995ULL);
  std::vector<std::int64_t> q;
  q.reserve(m);
  for (auto& kv : e) q.push_back(kv.first);
  return q;
}

struct take_newer {
  std::int64_t operator()(std::int64_t, std::int64_t b) const { return b; }
};

template <class M>
bool equals_model(const M& m, const model::table& t) {
  if (m.size() != t.size()) return false;
  auto e = m.entries();
  return std::equal(e.begin(), e.end(), t.begin());
}

template <class Sch>
round_run run_round(const bench_config& cfg) {
  using map_t = aug_map<sum_entry, Sch>;
  using maxmap_t = aug_map<max_entry, Sch>;
  round_run rr;
  bool want_oracle = oracle_sized(cfg);
  std::int64_t live0 = stats::live_nodes();

  auto finish = [&](clock_type::time_point t0, const stats::totals& before) {
    rr.ns = since_ns(t0);
    rr.delta = stats::snapshot() - before;
    rr.peak_live = std::max(live0, stats::live_nodes());
  };

  if (cfg.op == "union") {
    auto ea = gen_keys(cfg.n, cfg.seed);
    auto eb = gen_keys(cfg.m, cfg.seed + 1);
    map_t a = map_t::build(ea, take_newer{});
    map_t b = map_t::build(eb, take_newer{});
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    map_t u = map_union(a, b, take_newer{});
    finish(t0, before);
    if (want_oracle) {
      auto m = model::merge_union(model::build(ea, take_newer{}), model::build(eb, take_newer{}),
                                  take_newer{});
      if (!equals_model(u, m)) {
        rr.ok = false;
        rr.note = "oracle mismatch";
      }
    }
  } else if (cfg.op == "find") {
    auto ea = gen_keys(cfg.n, cfg.seed);
    map_t a = map_t::build(ea, take_newer{});
    auto qs = query_keys(cfg.m, cfg.seed);
    std::size_t hits = 0;
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    for (auto k : qs)
      if (a.find(k)) hits++;
    finish(t0, before);
    if (want_oracle) {
      auto m = model::build(ea, take_newer{});
      std::size_t expect = 0;
      for (auto k : qs)
        expect += std::binary_search(m.begin(), m.end(), model::entry{k, 0},
                                     [](auto& x, auto& y) { return x.first < y.first; });
      if (hits != expect) {
        rr.ok = false;
        rr.note = "oracle mismatch";
      }
    }
  } else if (cfg.op == "insert") {
    auto ea = gen_keys(cfg.n, cfg.seed);
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    map_t a;
    for (auto& kv : ea) a = std::move(a).insert(kv.first, kv.second, take_newer{});
    finish(t0, before);
    if (want_oracle && !equals_model(a, model::build(ea, take_newer{}))) {
      rr.ok = false;
      rr.note = "oracle mismatch";
    }
  } else if (cfg.op == "build") {
    auto ea = gen_keys(cfg.n, cfg.seed);
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    map_t a = map_t::build(ea, take_newer{});
    finish(t0, before);
    if (want_oracle && !equals_model(a, model::build(ea, take_newer{}))) {
      rr.ok = false;
      rr.note = "oracle mismatch";
    }
  } else if (cfg.op == "filter") {
    auto ea = gen_keys(cfg.n, cfg.seed);
    map_t a = map_t::build(ea, take_newer{});
    auto keep = [](const std::int64_t&, const std::int64_t& v) { return (v & 1) == 0; };
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    map_t f = a.filter(keep);
    finish(t0, before);
    if (want_oracle &&
        !equals_model(f, model::filtered(model::build(ea, take_newer{}), keep))) {
      rr.ok = false;
      rr.note = "oracle mismatch";
    }
  } else if (cfg.op == "multi-insert") {
    auto ea = gen_keys(cfg.n, cfg.seed);
    auto eb = gen_keys(cfg.m, cfg.seed + 1);
    map_t a = map_t::build(ea, take_newer{});
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    map_t u = a.multi_insert(eb, take_newer{});
    finish(t0, before);
    if (want_oracle) {
      auto m = model::merge_union(model::build(ea, take_newer{}), model::build(eb, take_newer{}),
                                  take_newer{});
      if (!equals_model(u, m)) {
        rr.ok = false;
        rr.note = "oracle mismatch";
      }
    }
  } else if (cfg.op == "range" || cfg.op == "aug-range" || cfg.op == "aug-left") {
    auto ea = gen_keys(cfg.n, cfg.seed);
    map_t a = map_t::build(ea, take_newer{});
    auto qs = query_keys(2 * cfg.m, cfg.seed);
    model::table m;
    if (want_oracle) m = model::build(ea, take_newer{});
    std::int64_t checksum = 0;
    bool mismatch = false;
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    for (std::size_t i = 0; i < cfg.m; i++) {
      std::int64_t lo = qs[2 * i];
      std::int64_t hi = qs[2 * i + 1];
      if (hi < lo) std::swap(lo, hi);
      if (cfg.op == "range") {
        map_t r = a.range(lo, hi);
        checksum += std::int64_t(r.size());
        if (want_oracle && r.size() != model::slice(m, lo, hi).size()) mismatch = true;
      } else if (cfg.op == "aug-range") {
        std::int64_t s = a.aug_range(lo, hi);
        checksum += s;
        if (want_oracle && s != model::sum_values(m, lo, hi)) mismatch = true;
      } else {
        std::int64_t s = a.aug_left_incl(hi);
        checksum += s;
        if (want_oracle &&
            s != model::sum_values(m, std::numeric_limits<std::int64_t>::min(), hi))
          mismatch = true;
      }
    }
    finish(t0, before);
    (void)checksum;
    if (mismatch) {
      rr.ok = false;
      rr.note = "oracle mismatch";
    }
  } else if (cfg.op == "aug-filter") {
    // distinct values 0..n-1 shuffled, so threshold n-m keeps exactly
    // min(m, n) entries
    auto ea = gen_keys(cfg.n, cfg.seed);
    std::vector<std::int64_t> vals(ea.size());
    for (std::size_t i = 0; i < ea.size(); i++) vals[i] = std::int64_t(i);
    std::mt19937_64 rng(cfg.seed + 7);
    std::shuffle(vals.begin(), vals.end(), rng);
    for (std::size_t i = 0; i < ea.size(); i++) ea[i].second = vals[i];
    maxmap_t a = maxmap_t::build(ea, take_newer{});
    std::int64_t theta = std::int64_t(a.size()) - std::int64_t(cfg.m) - 1;
    auto h = [theta](const std::int64_t& x) { return x > theta; };
    auto before = stats::snapshot();
    auto t0 = clock_type::now();
    maxmap_t f = a.aug_filter(h);
    finish(t0, before);
    if (want_oracle) {
      auto m = model::filtered(model::build(ea, take_newer{}),
                               [&](auto&, auto& v) { return v > theta; });
      if (!equals_model(f, m)) {
        rr.ok = false;
        rr.note = "oracle mismatch";
      }
    }
  } else {
    throw std::invalid_argument("unknown benchmark operation: " + cfg.op);
  }
  return rr;
}

template <class Sch>
std::vector<round_run> run_rounds(const bench_config& cfg) {
  auto& sched = parallel::scheduler::get();
  sched.set_workers(cfg.threads);
  std::vector<round_run> rs;
  for (unsigned i = 0; i < cfg.rounds; i++) {
    std::uint64_t spawned0 = sched.tasks_spawned();
    rs.push_back(run_round<Sch>(cfg));
    if (cfg.threads == 1 && sched.tasks_spawned() != spawned0) {
      rs.back().ok = false;
      rs.back().note = "sequential run spawned parallel tasks";
    }
  }
  sched.set_workers(1);
  return rs;
}

std::vector<round_run> run_rounds_dispatch(const bench_config& cfg) {
  if (cfg.scheme == scheme_kind::weight_balanced)
    return run_rounds<weight_balanced>(cfg);
  return run_rounds<treap>(cfg);
}

const round_run& median_round(const std::vector<round_run>& rs) {
  static thread_local std::vector<std::size_t> idx;
  idx.resize(rs.size());
  for (std::size_t i = 0; i < rs.size(); i++) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return rs[a].ns < rs[b].ns; });
  return rs[idx[rs.size() / 2]];
}

}  // namespace

std::optional<scheme_kind> parse_scheme(const std::string& s) {
  if (s == "wb" || s == "weight-balanced") return scheme_kind::weight_balanced;
  if (s == "treap") return scheme_kind::treap;
  return std::nullopt;
}

const std::vector<std::string>& known_ops() {
  static const std::vector<std::string> ops = {
      "union", "find",         "insert", "build",    "filter",
      "multi-insert", "range", "aug-left", "aug-range", "aug-filter"};
  return ops;
}

bench_record run_bench(const bench_config& cfg) {
  if (std::find(known_ops().begin(), known_ops().end(), cfg.op) == known_ops().end())
    throw std::invalid_argument("unknown benchmark operation: " + cfg.op);
  if (cfg.rounds < 1) throw std::invalid_argument("rounds must be >= 1");

  bench_record rec;
  rec.config = cfg;
  try {
    auto rs = run_rounds_dispatch(cfg);
    const round_run& med = median_round(rs);
    rec.time_ns = med.ns;
    rec.comparisons = med.delta.comparisons;
    rec.nodes_allocated = med.delta.nodes_allocated;
    rec.nodes_freed = med.delta.nodes_freed;
    rec.peak_live_nodes = 0;
    for (auto& r : rs) {
      rec.peak_live_nodes = std::max(rec.peak_live_nodes, r.peak_live);
      if (!r.ok && rec.ok) {
        rec.ok = false;
        rec.note = r.note;
      }
    }
    if (cfg.threads > 1) {
      bench_config base = cfg;
      base.threads = 1;
      auto bs = run_rounds_dispatch(base);
      for (auto& r : bs)
        if (!r.ok && rec.ok) {
          rec.ok = false;
          rec.note = r.note;
        }
      rec.speedup = double(median_round(bs).ns) / double(rec.time_ns ? rec.time_ns : 1);
    }
  } catch (const std::bad_alloc&) {
    rec.ok = false;
    rec.note = "resource exhaustion (allocation failed)";
  }
  return rec;
}

std::string csv_header() {
  return "op,n,m,threads,rounds,seed,scheme,time_ns,comparisons,nodes_allocated,"
         "nodes_freed,peak_live_nodes,speedup";
}

std::string csv_row(const bench_record& r) {
  std::ostringstream os;
  os << r.config.op << ',' << r.config.n << ',' << r.config.m << ',' << r.config.threads
     << ',' << r.config.rounds << ',' << r.config.seed << ','
     << scheme_name(r.config.scheme) << ',' << r.time_ns << ',' << r.comparisons << ','
     << r.nodes_allocated << ',' << r.nodes_freed << ',' << r.peak_live_nodes << ',';
  if (r.speedup) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *r.speedup);
    os << buf;
  }
  return os.str();
}

void emit_csv(const std::vector<bench_record>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << csv_header() << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::vector<bench_record> parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  if (line != csv_header()) throw std::runtime_error("unexpected csv header in " + path);
  std::vector<bench_record> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string piece;
    while (std::getline(ss, piece, ',')) f.push_back(piece);
    if (line.back() == ',') f.push_back("");
    if (f.size() != 13) throw std::runtime_error("bad csv row in " + path);
    bench_record r;
    r.config.op = f[0];
    r.config.n = std::stoull(f[1]);
    r.config.m = std::stoull(f[2]);
    r.config.threads = unsigned(std::stoul(f[3]));
    r.config.rounds = unsigned(std::stoul(f[4]));
    r.config.seed = std::stoull(f[5]);
    auto sk = parse_scheme(f[6]);
    if (!sk) throw std::runtime_error("bad scheme in " + path);
    r.config.scheme = *sk;
    r.time_ns = std::stoull(f[7]);
    r.comparisons = std::stoull(f[8]);
    r.nodes_allocated = std::stoull(f[9]);
    r.nodes_freed = std::stoull(f[10]);
    r.peak_live_nodes = std::stoll(f[11]);
    if (!f[12].empty()) r.speedup = std::stod(f[12]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace augmap::bench
