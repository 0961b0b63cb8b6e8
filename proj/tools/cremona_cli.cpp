// cremona: command-line access to the library.
//
// Exit codes: 0 success, 1 domain error (the error name is printed as the
// first word on stderr), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cremona/amalgam.hpp"
#include "cremona/error.hpp"
#include "cremona/textio.hpp"
#include "cremona/wordio.hpp"

using namespace cremona;
using nlohmann::ordered_json;

namespace {

struct Options {
  std::uint64_t seed = 0;
  std::string trace_file;
  std::string format = "plain";
  bool json() const { return format == "json"; }
};

// Collects one result and prints it either as "key: value" lines or as a
// single JSON object.
class Output {
 public:
  explicit Output(const Options& o) : json_(o.json()) {}

  // A line printed as-is in plain mode and stored under key in JSON mode.
  template <class T>
  void field(const std::string& key, const T& value, const std::string& plain) {
    obj_[key] = value;
    lines_.push_back(plain);
  }
  template <class T>
  void field(const std::string& key, const T& value) {
    std::ostringstream os;
    if constexpr (std::is_same_v<T, ordered_json>)
      os << key << ": " << value.dump();
    else if constexpr (std::is_same_v<T, bool>)
      os << key << ": " << (value ? "true" : "false");
    else
      os << key << ": " << value;
    field(key, value, os.str());
  }
  void print() const {
    if (json_) {
      std::cout << obj_.dump() << "\n";
    } else {
      for (const auto& l : lines_) std::cout << l << "\n";
    }
  }

 private:
  bool json_;
  ordered_json obj_ = ordered_json::object();
  std::vector<std::string> lines_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("cannot write " + path);
  out << text;
}

ordered_json points_json(const std::array<BubblePoint, 3>& pts) {
  ordered_json a = ordered_json::array();
  for (const auto& p : pts) a.push_back(p.str());
  return a;
}

std::string join(const std::array<BubblePoint, 3>& pts) {
  return pts[0].str() + "; " + pts[1].str() + "; " + pts[2].str();
}

BirMap map_or_word(const std::string& text, const std::string& word_file) {
  if (!word_file.empty()) {
    Word w = parse_word(read_file(word_file));
    std::vector<BirMap> maps;
    for (const auto& l : w) maps.push_back(l.map);
    return compose(maps);
  }
  return parse_map(text);
}

ordered_json complexity_json(const std::vector<ComplexityPair>& cs) {
  ordered_json a = ordered_json::array();
  for (const auto& c : cs) a.push_back({c.D, c.N});
  return a;
}

// Word made of the identity-word generator, optionally with the torus
// relator delta sigma3 delta sigma3 spliced in.
Word fuzz_word(Rng& rng, int max_letters) {
  auto style = static_cast<IdentityWordStyle>(rng.uniform(0, 2));
  int w_letters = style == IdentityWordStyle::Inverse ? static_cast<int>(rng.uniform(2, 6))
                                                      : static_cast<int>(rng.uniform(2, 5));
  Word w = random_identity_word(rng, style, w_letters, max_letters);
  if (rng.coin()) {
    Letter d = Letter::linear(random_torus(rng));
    Letter s3(BirMap::sigma(3), GroupTag::F0);
    auto at = w.begin() + rng.uniform(0, static_cast<long>(w.size()));
    w.insert(at, {d, s3, d, s3});
  }
  return w;
}

// Empty string when the word reduces and both replays succeed.
std::string fuzz_check(const Word& w, std::uint64_t seed) {
  try {
    RewriteTrace t = reduce_identity_word(w, {seed});
    if (!t.final_word().empty()) return "InvariantViolation: reduction did not reach the empty word";
    std::string r = replay_trace(t);
    if (!r.empty()) return "InvariantViolation: replay failed: " + r;
    return "";
  } catch (const Error& e) {
    return e.what();
  }
}

std::string error_kind_of(const std::string& message) { return message.substr(0, message.find(':')); }

// Greedy shrinking that keeps the product the identity: neighbouring linear
// letters are merged and neighbouring pairs with identity product dropped,
// as long as the same kind of failure persists.
Word minimize(Word w, std::uint64_t seed, const std::string& kind) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size() && !changed; ++i) {
      Word cand = w;
      if (w[i].is_linear() && w[i + 1].is_linear()) {
        cand[i] = Letter::linear(w[i].map.as_linear() * w[i + 1].map.as_linear());
        cand.erase(cand.begin() + static_cast<long>(i) + 1);
      } else if (compose(w[i].map, w[i + 1].map).is_identity()) {
        cand.erase(cand.begin() + static_cast<long>(i), cand.begin() + static_cast<long>(i) + 2);
      } else {
        continue;
      }
      std::string why = fuzz_check(cand, seed);
      if (!why.empty() && error_kind_of(why) == kind) {
        w = std::move(cand);
        changed = true;
      }
    }
  }
  return w;
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Check> selftest(std::uint64_t seed) {
  std::vector<Check> out;
  auto run = [&](const std::string& name, auto body) {
    try {
      auto [pass, detail] = body();
      out.push_back({name, pass, detail});
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  run("involutions", [] {
    int ok = 0;
    for (int i = 1; i <= 3; ++i) ok += compose(BirMap::sigma(i), BirMap::sigma(i)).is_identity();
    return std::pair{ok == 3, std::to_string(ok) + "/3"};
  });
  run("generation identity", [] {
    BirMap t = BirMap::tau(1, 2), s2 = BirMap::sigma(2);
    BirMap p = compose({t, s2, t, s2});
    return std::pair{p == BirMap::sigma(3), to_string(p)};
  });
  run("relator suite", [&] {
    PresentationReport r = verify_presentation(50, seed);
    return std::pair{r.ok(), std::to_string(r.families.size()) + " families"};
  });
  run("f-bullet fixture", [] {
    BubblePoint got = fbullet(BirMap::sigma(3), BubblePoint(ProjPoint(0, 1, 1)));
    return std::pair{got == BubblePoint(ProjPoint(1, 0, 0), {P1Point(1, 1)}), got.str()};
  });
  run("de Jonquieres factorization", [&] {
    Rng rng(seed);
    int ok = 0;
    for (int k = 0; k < 40; ++k) {
      BirMap f = random_dj_quadratic(rng, static_cast<DJKind>(k % 4));
      DJFactorization q = factor_quadratic_dJ(f);
      ok += compose({BirMap::linear(q.alpha2), q.tau(), BirMap::linear(q.alpha1)}) == f;
    }
    return std::pair{ok == 40, std::to_string(ok) + "/40"};
  });
  run("identity-word reduction", [&] {
    Rng rng(seed + 1);
    int ok = 0;
    for (int k = 0; k < 5; ++k) ok += fuzz_check(fuzz_word(rng, 12), seed + k).empty();
    return std::pair{ok == 5, std::to_string(ok) + "/5"};
  });
  run("decomposition", [&] {
    Rng rng(seed + 2);
    int ok = 0, total = 0;
    for (int k = 0; k < 10; ++k) {
      std::vector<BirMap> letters;
      for (int j = 0; j < 3; ++j) letters.push_back(random_dj_quadratic(rng, static_cast<DJKind>(rng.uniform(0, 3))));
      BirMap f = compose(letters);
      try {
        ok += compose(decompose_dejonquieres(f)) == f;
        ++total;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnsupportedBasePointConfiguration) throw;
      }
    }
    return std::pair{ok == total && total > 0, std::to_string(ok) + "/" + std::to_string(total)};
  });
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact plane Cremona maps, base points and word rewriting"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  if (const char* env = std::getenv("CREMONA_SEED")) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "usage error: CREMONA_SEED must be a non-negative integer\n";
      return 2;
    }
  }
  app.add_option("--seed", opt.seed, "Seed for every random choice (default: CREMONA_SEED or 0)");
  app.add_option("--trace", opt.trace_file, "Write the rewrite trace of reduce-word to this file");
  app.add_option("--format", opt.format, "Output encoding")->check(CLI::IsMember({"plain", "json"}));

  std::vector<std::string> maps;
  std::string map_arg, point_arg, word_file, out_file;
  int samples = 100, cases = 20, max_letters = 12, jobs = 1;

  auto* c_compose = app.add_subcommand("compose", "Compose maps, leftmost applied last");
  c_compose->add_option("maps", maps, "Maps")->required();
  auto* c_inverse = app.add_subcommand("inverse", "Inverse of a map");
  c_inverse->add_option("map", map_arg)->required();
  auto* c_degree = app.add_subcommand("degree", "Degree of a map");
  c_degree->add_option("map", map_arg)->required();
  auto* c_apply = app.add_subcommand("apply", "Image of a point");
  c_apply->add_option("map", map_arg)->required();
  c_apply->add_option("point", point_arg)->required();
  auto* c_base = app.add_subcommand("basepoints", "Consistently ordered base points of a quadratic map");
  c_base->add_option("map", map_arg)->required();
  auto* c_classify = app.add_subcommand("classify", "Subgroups containing a map of degree at most 2");
  c_classify->add_option("map", map_arg)->required();
  auto* c_factor = app.add_subcommand("factor", "Write a quadratic map as beta sigma_i alpha");
  c_factor->add_option("map", map_arg)->required();
  auto* c_factor_dj = app.add_subcommand("factor-dj", "Write a quadratic de Jonquieres map as alpha2 tau alpha1");
  c_factor_dj->add_option("map", map_arg)->required();
  auto* c_decompose = app.add_subcommand("decompose-dj", "Quadratic de Jonquieres factors of a de Jonquieres map");
  c_decompose->add_option("map", map_arg);
  c_decompose->add_option("--word", word_file, "Word file whose product is decomposed");
  auto* c_system = app.add_subcommand("system", "Image of the lines under a product of letters");
  c_system->add_option("maps", maps, "Letters, leftmost applied last");
  c_system->add_option("--word", word_file, "Word file with the letters");
  auto* c_reduce = app.add_subcommand("reduce-word", "Reduce an identity word to the empty word");
  c_reduce->add_option("file", word_file)->required();
  auto* c_verify = app.add_subcommand("verify-presentation", "Check the relator families");
  c_verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
  auto* c_fuzz = app.add_subcommand("fuzz", "Reduce random identity words");
  c_fuzz->add_option("--cases", cases)->check(CLI::PositiveNumber);
  c_fuzz->add_option("--max-letters", max_letters)->check(CLI::Range(4, 24));
  c_fuzz->add_option("--jobs", jobs)->check(CLI::Range(1, 64));
  c_fuzz->add_option("--out", out_file, "Where a minimized failing word is written")
      ->default_str("fuzz_failure.txt");
  auto* c_selftest = app.add_subcommand("selftest", "Quick run of the core checks");

  // CLI11 reads an argument of the form "[a, b]" as a list of values, which
  // would split maps and points. A leading space keeps them whole and is
  // ignored by the parsers.
  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) {
    std::string a = argv[k];
    args.push_back(!a.empty() && a.front() == '[' ? " " + a : a);
  }
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out(opt);
  try {
    if (*c_compose) {
      std::vector<BirMap> ms;
      for (const auto& m : maps) ms.push_back(parse_map(m));
      BirMap f = compose(ms);
      out.field("map", to_string(f), to_string(f));
      out.field("degree", f.degree());
    } else if (*c_inverse) {
      BirMap f = inverse(parse_map(map_arg));
      out.field("map", to_string(f), to_string(f));
    } else if (*c_degree) {
      int d = parse_map(map_arg).degree();
      out.field("degree", d, std::to_string(d));
    } else if (*c_apply) {
      ProjPoint p = apply(parse_map(map_arg), parse_point(point_arg));
      out.field("point", p.str(), p.str());
    } else if (*c_base) {
      ConsistentBasepoints cb = basepoints_quadratic(parse_map(map_arg));
      out.field("sigma", cb.i);
      out.field("source", points_json(cb.source), "source: " + join(cb.source));
      out.field("target", points_json(cb.target), "target: " + join(cb.target));
    } else if (*c_classify) {
      Classification c = classify_subgroups(parse_map(map_arg));
      ordered_json groups = ordered_json::array();
      if (c.p2) groups.push_back("P2");
      if (c.f0) groups.push_back("F0");
      if (c.f2) groups.push_back("F2");
      out.field("groups", groups, c.str());
      out.field("dejonquieres", c.dejonquieres, "");
      if (!opt.json()) {
        // The classification line already carries the flag.
        Output plain(opt);
        plain.field("groups", groups, c.str());
        plain.print();
        return 0;
      }
    } else if (*c_factor) {
      QuadraticFactorization q = factor_quadratic(parse_map(map_arg));
      out.field("beta", q.beta.str());
      out.field("sigma", q.i);
      out.field("alpha", q.alpha.str());
    } else if (*c_factor_dj) {
      DJFactorization q = factor_quadratic_dJ(parse_map(map_arg));
      out.field("alpha2", q.alpha2.str());
      out.field("tau", std::string(dj_kind_name(q.kind)));
      out.field("alpha1", q.alpha1.str());
    } else if (*c_decompose) {
      if (map_arg.empty() == word_file.empty())
        throw CLI::ValidationError("decompose-dj needs exactly one of a map or --word");
      std::vector<BirMap> parts = decompose_dejonquieres(map_or_word(map_arg, word_file));
      ordered_json a = ordered_json::array();
      std::string plain;
      for (const auto& p : parts) {
        a.push_back(to_string(p));
        plain += (plain.empty() ? "" : "\n") + to_string(p);
      }
      out.field("factors", a, plain);
    } else if (*c_system) {
      std::vector<BirMap> letters;
      if (!word_file.empty()) {
        for (const auto& l : parse_word(read_file(word_file))) letters.push_back(l.map);
      } else {
        for (const auto& m : maps) letters.push_back(parse_map(m));
      }
      LinearSystem s = system_of_word(letters);
      out.field("system", s.str(), s.str());
      out.field("dejonquieres", is_dejonquieres_system(s));
    } else if (*c_reduce) {
      Word w = parse_word(read_file(word_file));
      RewriteTrace t = reduce_identity_word(w, {opt.seed});
      std::string replay = replay_trace(t);
      if (!replay.empty()) throw Error(ErrorKind::InvariantViolation, "trace replay failed: " + replay);
      if (!opt.trace_file.empty()) write_file(opt.trace_file, t.str());
      std::string rounds = std::to_string(t.rounds) + (t.rounds == 1 ? " round" : " rounds");
      out.field("result", "empty", "reduced to empty in " + rounds);
      out.field("rounds", t.rounds, "");
      out.field("steps", t.steps.size(), "steps: " + std::to_string(t.steps.size()));
      out.field("resamples", t.resamples, "resamples: " + std::to_string(t.resamples));
      out.field("complexities", complexity_json(t.complexities));
      if (!opt.json()) {
        std::cout << "reduced to empty in " << rounds << "\n";
        std::cout << "steps: " << t.steps.size() << "\n";
        return 0;
      }
    } else if (*c_verify) {
      PresentationReport r = verify_presentation(samples, opt.seed);
      ordered_json fams = ordered_json::array();
      for (const auto& f : r.families)
        fams.push_back({{"name", f.name}, {"passed", f.passed}, {"total", f.total}});
      std::string plain = r.str();
      plain += r.ok() ? "ALL PASSED" : "FAILED";
      out.field("families", fams, plain);
      out.field("ok", r.ok(), "");
      if (!opt.json()) {
        std::cout << plain << "\n";
        return r.ok() ? 0 : 1;
      }
      out.print();
      return r.ok() ? 0 : 1;
    } else if (*c_fuzz) {
      // Each case is a pure function of its sub-seed, so cases may run in
      // parallel; results are reported in case order.
      Rng root(opt.seed);
      std::vector<std::uint64_t> seeds(cases);
      for (auto& s : seeds) s = root.next();
      auto one = [&](int k) -> std::pair<Word, std::string> {
        Rng rng(seeds[k]);
        Word w = fuzz_word(rng, max_letters);
        return {w, fuzz_check(w, seeds[k])};
      };
      std::vector<std::pair<Word, std::string>> results(cases);
      for (int start = 0; start < cases; start += jobs) {
        std::vector<std::future<std::pair<Word, std::string>>> fs;
        for (int k = start; k < std::min(cases, start + jobs); ++k)
          fs.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, one, k));
        for (int k = start; k < std::min(cases, start + jobs); ++k) results[k] = fs[k - start].get();
      }
      int failed = -1;
      std::size_t max_len = 0;
      for (int k = 0; k < cases; ++k) {
        max_len = std::max(max_len, results[k].first.size());
        if (!results[k].second.empty() && failed < 0) failed = k;
      }
      out.field("cases", cases);
      out.field("passed", failed < 0 ? cases : failed);
      out.field("max_letters_seen", max_len);
      if (failed >= 0) {
        const auto& [w, why] = results[failed];
        Word small = minimize(w, seeds[failed], error_kind_of(why));
        write_file(out_file, "# fuzz case " + std::to_string(failed) + ", seed " +
                                 std::to_string(seeds[failed]) + "\n# " + why + "\n" + format_word(small));
        out.field("failure", why);
        out.field("reproducer", out_file);
        out.print();
        return 1;
      }
    } else if (*c_selftest) {
      auto checks = selftest(opt.seed);
      bool all = true;
      ordered_json a = ordered_json::array();
      std::string plain;
      for (const auto& c : checks) {
        all = all && c.pass;
        a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        plain += std::string(c.pass ? "PASS" : "FAIL") + "  " + c.name + ": " + c.detail + "\n";
      }
      plain += all ? "ALL PASSED" : "FAILED";
      out.field("checks", a, plain);
      out.field("ok", all, "");
      if (!opt.json()) {
        std::cout << plain << "\n";
        return all ? 0 : 1;
      }
      out.print();
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  out.print();
  return 0;
}
