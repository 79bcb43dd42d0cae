// Command-line front end. Exit codes: 0 success, 1 verdict failure, 2 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intercat/intercat.hpp"

namespace fs = std::filesystem;
using namespace intercat;
using io::json;

namespace {

struct VerdictFailure {
  std::string message;
};

std::size_t default_bound() {
  if (const char* env = std::getenv("INTERCAT_BOUND")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "INTERCAT_BOUND is not a number: " + std::string(env));
    }
  }
  return 8;
}

void emit(const json& j) { std::cout << io::dump(j); }

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, p.string() + ": cannot write");
  out << text;
}

void report(const Verdict& v, const std::string& yes = "yes") {
  if (!v) throw VerdictFailure{"no: " + v.describe()};
  std::cout << yes << "\n";
}

json strip(json j) {
  j.erase("kind");
  return j;
}

Functor load_functor(const std::string& path) { return io::expect<Functor>(io::parse(path), "functor"); }
NatTrans load_nattrans(const std::string& path) { return io::expect<NatTrans>(io::parse(path), "nattrans"); }
FinFn load_function(const std::string& path) { return io::expect<FinFn>(io::parse(path), "function"); }

io::PairDoc load_pair(const std::string& path) { return io::expect<io::PairDoc>(io::parse(path), "pair"); }
io::SpanDoc load_span(const std::string& path) { return io::expect<io::SpanDoc>(io::parse(path), "span"); }

json coeq_json(const Coeq& r) {
  auto j = io::to_json(r.presentation, &r.materialized);
  j["step1_exact"] = r.step1.exact();
  return j;
}

void write_coeq_dir(const fs::path& dir, const Functor& F, const Functor& G, const Coeq& r) {
  fs::create_directories(dir);
  write_file(dir / "A.json", io::dump(io::to_json(F.dom())));
  write_file(dir / "B.json", io::dump(io::to_json(F.cod())));
  write_file(dir / "C.json", io::dump(io::to_json(r.object())));
  write_file(dir / "F.json", io::dump(io::to_json(F)));
  write_file(dir / "G.json", io::dump(io::to_json(G)));
  write_file(dir / "Q.json", io::dump(io::to_json(r.Q)));
  write_file(dir / "presentation.json", io::dump(coeq_json(r)));
  json manifest{{"kind", "manifest"},
                {"command", "coequalize"},
                {"exact", r.exact()},
                {"bound", r.materialized.bound},
                {"files", {"A.json", "B.json", "C.json", "F.json", "G.json", "Q.json", "presentation.json"}}};
  write_file(dir / "manifest.json", io::dump(manifest));
}

void verify_coeq_dir(const fs::path& dir) {
  auto manifest = io::load_json(dir / "manifest.json");
  if (!manifest.value("exact", false))
    throw Error(ErrorKind::InexactInput, dir.string() + " holds a truncated materialization; the oracle needs an exact one");
  auto F = load_functor((dir / "F.json").string());
  auto G = load_functor((dir / "G.json").string());
  auto Q = load_functor((dir / "Q.json").string());
  auto v = verify_coequaliser(F, G, Q, default_family());
  if (!v) throw VerdictFailure{"Fail: " + v.describe()};
  std::cout << "Ok: coequaliser against " << default_family().categories.size() << " categories at caps "
            << default_family().caps() << "\n";
}

void verify_random(unsigned seed, std::size_t count) {
  std::mt19937 rng(seed);
  const auto& fam = default_family();
  std::size_t failures = 0;
  for (std::size_t k = 0; k < count; ++k) {
    auto [F, G] = random_agree_pair(rng, fam, 60);
    auto r = coequalize_on_objects(F, G);
    auto v = verify_coequaliser(F, G, r.Q, fam);
    auto cat = validate_category(r.object());
    std::cout << "instance " << k << ": |A1|=" << F.dom().n_morphisms() << " |B1|=" << F.cod().n_morphisms()
              << " |C1|=" << r.object().n_morphisms() << " coequaliser " << (v ? "Ok" : "Fail " + v.describe()) << ", category "
              << (cat ? "Ok" : "Fail " + cat.describe()) << "\n";
    if (!v || !cat) ++failures;
  }
  if (failures) throw VerdictFailure{std::to_string(failures) + " of " + std::to_string(count) + " instances failed"};
  std::cout << "all " << count << " instances Ok\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite 2-colimits of internal categories over finite sets"};
  app.require_subcommand(1);
  std::size_t bound = 0;
  std::vector<std::string> files;
  std::string out_dir;
  unsigned seed = 1;
  std::size_t count = 20;

  auto with_bound = [&](CLI::App* c) { c->add_option("--bound", bound, "Materialization bound (default 8, or INTERCAT_BOUND)"); };

  auto* validate = app.add_subcommand("validate", "Parse and validate a document");
  validate->add_option("file", files)->required()->expected(1);
  auto* coproduct = app.add_subcommand("coproduct", "Coproduct of categories");
  coproduct->add_option("files", files)->required();
  auto* copower = app.add_subcommand("copower2", "The copower 2_E x A");
  copower->add_option("file", files)->required()->expected(1);
  auto* coeq = app.add_subcommand("coequalize", "Coequaliser of a parallel pair");
  coeq->add_option("pair", files)->required()->expected(1);
  coeq->add_option("--out", out_dir, "Write all artifacts to this directory");
  with_bound(coeq);
  auto* coeqf = app.add_subcommand("coequifier", "Coequifier of two parallel transformations");
  coeqf->add_option("transformations", files)->required()->expected(2);
  auto* freecat = app.add_subcommand("free-cat", "Free category on a graph");
  freecat->add_option("graph", files)->required()->expected(1);
  with_bound(freecat);
  auto* fromdisc = app.add_subcommand("from-discrete", "Coequaliser of a pair out of a discrete category");
  fromdisc->add_option("pair", files)->required()->expected(1);
  with_bound(fromdisc);
  auto* cocom = app.add_subcommand("cocomma", "Cocomma object of a span");
  cocom->add_option("span", files)->required()->expected(1);
  auto* push = app.add_subcommand("pushout", "Pushout of a span");
  push->add_option("span", files)->required()->expected(1);
  with_bound(push);
  auto* coins = app.add_subcommand("coinserter", "Coinserter of two functions between sets");
  coins->add_option("functions", files)->required()->expected(2);
  with_bound(coins);
  auto* conduche = app.add_subcommand("conduche", "Is a functor a discrete Conduché fibration");
  conduche->add_option("functor", files)->required()->expected(1);
  auto* pb = app.add_subcommand("pullback", "Pullback of a cospan of functors");
  pb->add_option("functors", files)->required()->expected(2);
  auto* susp = app.add_subcommand("suspend", "Two-point suspension of a set or a function");
  susp->add_option("file", files)->required()->expected(1);
  auto* stab = app.add_subcommand("stability", "Pullback stability of an agree-on-objects coequaliser");
  stab->add_option("files", files, "pair, structure functor over the base, functor to pull back along")->required()->expected(3);
  auto* cyc = app.add_subcommand("cycles-lift", "Do quotient cycles lift to the category");
  cyc->add_option("files", files, "category, object quotient function")->required()->expected(2);
  auto* verify = app.add_subcommand("verify", "Run a brute-force oracle");
  verify->require_subcommand(1);
  auto* vcoeq = verify->add_subcommand("coeq", "Check a directory written by coequalize --out");
  vcoeq->add_option("dir", files)->required()->expected(1);
  auto* vrand = verify->add_subcommand("random", "Check random coequalisers");
  vrand->add_option("--seed", seed, "Random seed");
  vrand->add_option("--count", count, "Number of instances");
  auto* dot = app.add_subcommand("dot", "Render a category, functor or graph as DOT");
  dot->add_option("file", files)->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (bound == 0) bound = default_bound();
    if (*validate) {
      auto d = io::parse(files[0]);
      std::cout << "valid " << d.kind << "\n";
    } else if (*coproduct) {
      std::vector<InternalCat> cats;
      for (const auto& f : files) cats.push_back(io::expect<InternalCat>(io::parse(f), "category"));
      emit(io::to_json(coproduct_cat(cats).object));
    } else if (*copower) {
      emit(io::to_json(copower2(io::expect<InternalCat>(io::parse(files[0]), "category")).object()));
    } else if (*coeq) {
      auto p = load_pair(files[0]);
      auto r = coequalize(p.first, p.second, bound, false);
      if (!out_dir.empty()) write_coeq_dir(out_dir, p.first, p.second, r);
      emit(coeq_json(r));
    } else if (*coeqf) {
      auto r = coequifier(load_nattrans(files[0]), load_nattrans(files[1]));
      emit(io::to_json(r.Q));
    } else if (*freecat) {
      auto g = io::expect<Graph>(io::parse(files[0]), "graph");
      auto r = free_category(g, bound);
      emit(io::to_json(r.presentation, &r.materialized));
    } else if (*fromdisc) {
      auto p = load_pair(files[0]);
      auto r = coequalize_from_discrete(p.first, p.second, bound);
      emit(io::to_json(r.presentation, &r.materialized));
    } else if (*cocom) {
      auto s = load_span(files[0]);
      auto r = cocomma(s.left, s.right);
      emit(json{{"kind", "cocomma"},
                {"object", strip(io::to_json(r.object))},
                {"J", strip(io::to_json(r.J))},
                {"K", strip(io::to_json(r.K))},
                {"lambda", strip(io::to_json(r.lambda))}});
    } else if (*push) {
      auto s = load_span(files[0]);
      auto r = pushout(s.left, s.right, bound);
      emit(coeq_json(r.coeq));
    } else if (*coins) {
      auto r = coinserter(load_function(files[0]), load_function(files[1]), bound);
      emit(coeq_json(r.po.coeq));
    } else if (*conduche) {
      report(is_discrete_conduche(load_functor(files[0])));
    } else if (*pb) {
      emit(io::to_json(pullback_cat(load_functor(files[0]), load_functor(files[1])).object));
    } else if (*susp) {
      auto d = io::parse(files[0]);
      if (auto x = std::get_if<FinObj>(&d.payload))
        emit(io::to_json(suspend(*x)));
      else
        emit(io::to_json(suspend_fn(io::expect<FinFn>(d, "set or function"))));
    } else if (*stab) {
      auto p = load_pair(files[0]);
      auto r = stability_experiment(p.first, p.second, load_functor(files[1]), load_functor(files[2]));
      if (!r.stable) throw VerdictFailure{"unstable: " + r.witness};
      std::cout << "stable\n";
    } else if (*cyc) {
      report(cycles_lift_check(io::expect<InternalCat>(io::parse(files[0]), "category"), load_function(files[1])));
    } else if (*vcoeq) {
      verify_coeq_dir(files[0]);
    } else if (*vrand) {
      verify_random(seed, count);
    } else if (*dot) {
      auto d = io::parse(files[0]);
      if (auto c = std::get_if<InternalCat>(&d.payload)) {
        std::cout << io::to_dot(*c);
      } else if (auto F = std::get_if<Functor>(&d.payload)) {
        auto members = io::class_members(*F);
        std::cout << io::to_dot(F->cod(), &members);
      } else {
        std::cout << io::to_dot(io::expect<Graph>(d, "category, functor or graph"));
      }
    }
  } catch (const VerdictFailure& f) {
    std::cout << f.message << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
