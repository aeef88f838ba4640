#include "quiverlab/cli.hpp"

#include "quiverlab/service.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

namespace quiverlab {

using io::json;

namespace {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

json read_json(const std::string& path, std::istream& in) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(path);
    if (!f) throw QuiverError(ErrorKind::ParseError, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  json j = io::parse(text);
  io::rethrow_if_error(j);
  return j;
}

ExchangeMatrix read_quiver(const std::string& path, std::istream& in) {
  const json j = read_json(path, in);
  if (io::type_of(j) == "plabic") return quiver_of(io::plabic_from(j));
  return io::quiver_from(j);
}

PlabicGraph read_plabic(const std::string& path, std::istream& in) { return io::plabic_from(read_json(path, in)); }

std::vector<Index> zero_based(const std::vector<long long>& v) {
  std::vector<Index> out;
  for (long long x : v) out.push_back(static_cast<Index>(x - 1));
  return out;
}

// Everything parsed from the command line before dispatch.
struct Options {
  std::string input = "-";
  // make
  std::string name;
  std::optional<long long> n;
  std::string core = "somos";
  std::vector<std::string> d;
  // mutate / restrict
  std::vector<long long> at;
  long long repeat = 1;
  std::vector<long long> keep;
  // analysis
  std::size_t budget = 0, depth = 64, trials = 10000, len = 20;
  long long mult = 2;
  std::string strategy = "bfs";
  std::uint64_t seed = 1;
  std::string needle, haystack;
  // embedding
  std::string target, cert;
  std::vector<std::string> symmetrizer;
  // plabic
  long long face = 0, edge = 0;
  bool augment = false, contracted = false;
  // export / serve
  std::string format = "json";
  std::string host = "127.0.0.1";
  int port = 8080;
};

std::vector<Integer> integers(const std::vector<std::string>& v) {
  std::vector<Integer> out;
  for (const auto& s : v) out.push_back(io::integer_from(json(s)));
  return out;
}

json with_vertex_of(const PlabicEmbedding& e) {
  json j = io::plabic_json(e.graph);
  json at = json::array();
  for (Index v : e.vertex_of) at.push_back(v + 1);
  j["vertex_of"] = at;
  return j;
}

int dispatch(const std::string& cmd, const std::string& sub, const Options& o, Streams s) {
  auto emit = [&](const json& j) { s.out << io::render(j); };
  if (cmd == "make") {
    Construction c{o.name, std::nullopt, parse_core(o.core), integers(o.d)};
    if (o.n) c.n = static_cast<Index>(*o.n);
    emit(make_construction(c));
    return 0;
  }
  if (cmd == "mutate") {
    auto m = read_quiver(o.input, s.in);
    std::vector<Index> seq;
    for (long long r = 0; r < o.repeat; ++r)
      for (Index k : zero_based(o.at)) seq.push_back(k);
    emit(io::quiver_json(mutate_seq(m, seq)));
    return 0;
  }
  if (cmd == "restrict") {
    emit(io::quiver_json(restrict_to(read_quiver(o.input, s.in), zero_based(o.keep))));
    return 0;
  }
  if (cmd == "frame") {
    emit(io::quiver_json(framed(read_quiver(o.input, s.in))));
    return 0;
  }
  if (cmd == "class") {
    const Budget b{o.budget ? o.budget : 10000, o.depth};
    emit(io::class_report_json(mutation_class_bfs(read_quiver(o.input, s.in), b), b));
    return 0;
  }
  if (cmd == "probe2") {
    emit(io::probe_report_json(probe_two_universal(read_quiver(o.input, s.in), o.depth, Integer(o.mult),
                                                   o.budget ? o.budget : 200000, parse_strategy(o.strategy))));
    return 0;
  }
  if (cmd == "sign-coherence") {
    emit(io::sign_coherence_json(
        check_sign_coherence(read_quiver(o.input, s.in), o.trials, o.len, effective_seed(o.seed))));
    return 0;
  }
  if (cmd == "contains") {
    const auto needle = read_quiver(o.needle, s.in);
    const auto haystack = read_quiver(o.haystack, s.in);
    emit(io::contains_json(find_full_subquiver(haystack, needle)));
    return 0;
  }
  if (cmd == "embed") {
    const auto target = read_quiver(o.target, s.in);
    EmbeddingCertificate c;
    if (!o.symmetrizer.empty())
      c = embed_matrix(target, Symmetrizer{integers(o.symmetrizer)});
    else if (target.is_skew_symmetric())
      c = embed_quiver(target, parse_core(o.core));
    else
      c = embed_matrix(target, target.symmetrizer());
    emit(io::certificate_json(c));
    return 0;
  }
  if (cmd == "verify") {
    const auto check = check_certificate(io::certificate_from(read_json(o.cert, s.in)));
    emit(io::check_json(check));
    return check.ok ? 0 : 1;
  }
  if (cmd == "plabic") {
    if (sub == "quiver-of") {
      emit(io::quiver_json(quiver_of(read_plabic(o.input, s.in))));
    } else if (sub == "square") {
      emit(io::plabic_json(square_move(read_plabic(o.input, s.in), static_cast<Index>(o.face - 1))));
    } else if (sub == "flip") {
      emit(io::plabic_json(flip_move(read_plabic(o.input, s.in), static_cast<Index>(o.edge - 1))));
    } else if (sub == "from-quiver") {
      PlanarQuiver q = io::planar_quiver_from(read_json(o.input, s.in));
      if (o.augment) q = augment_to_conditions(q).quiver;
      emit(with_vertex_of(plabic_from_quiver(q, !o.contracted)));
    } else if (sub == "universal") {
      if (!o.n) throw QuiverError(ErrorKind::BadParameters, "universal needs --n");
      emit(with_vertex_of(universal_plabic(static_cast<Index>(*o.n)).plabic));
    }
    return 0;
  }
  if (cmd == "export") {
    const Object obj = object_from(read_json(o.input, s.in));
    if (o.format == "json") {
      emit(object_json(obj));
    } else if (const auto* m = std::get_if<ExchangeMatrix>(&obj)) {
      s.out << io::quiver_dot(*m);
    } else {
      s.out << io::plabic_dot(std::get<PlabicGraph>(obj));
    }
    return 0;
  }
  if (cmd == "serve") {
    Service service;
    HttpServer server(service);
    const int port = server.bind(o.host, o.port);
    if (port < 0) throw QuiverError(ErrorKind::BadParameters, "cannot listen on " + o.host + ":" + std::to_string(o.port));
    s.err << "listening on http://" << o.host << ":" << port << std::endl;
    server.run();
    return 0;
  }
  return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quiver mutation, universal quivers and plabic graphs", "quiverlab"};
  app.require_subcommand(1);
  Options o;
  auto input = [&o](CLI::App* c) { c->add_option("--input", o.input, "JSON file, - for stdin"); };

  auto* make = app.add_subcommand("make", "build a named quiver or universal object");
  make->add_option("name", o.name,
                   "extended_somos4, double_four_cycle, markov, two_universal_3, grid(k,l), kronecker(m), "
                   "universal, d_universal, planar_universal, plabic_universal")
      ->required();
  make->add_option("--n", o.n, "number of base vertices");
  make->add_option("--core", o.core, "somos or double4");
  make->add_option("--d", o.d, "symmetrizer d1,d2,...")->delimiter(',');

  auto* mut = app.add_subcommand("mutate", "mutate at the given vertices in order");
  input(mut);
  mut->add_option("--at", o.at, "vertex (repeatable, or comma separated)")->delimiter(',');
  mut->add_option("--repeat", o.repeat, "apply the --at sequence this many times")->check(CLI::NonNegativeNumber);

  auto* res = app.add_subcommand("restrict", "full subquiver on the listed vertices");
  input(res);
  res->add_option("--keep", o.keep, "vertices, in order")->delimiter(',')->required();

  auto* frame = app.add_subcommand("frame", "add a frozen copy u' -> u of every vertex");
  input(frame);

  auto* cls = app.add_subcommand("class", "bounded breadth-first search of the mutation class");
  input(cls);
  cls->add_option("--budget", o.budget, "maximal number of classes (default 10000)");
  cls->add_option("--depth", o.depth, "maximal depth");

  auto* probe = app.add_subcommand("probe2", "look for a mutation creating a multiple arrow");
  input(probe);
  probe->add_option("--mult", o.mult, "target multiplicity");
  probe->add_option("--depth", o.depth, "maximal depth");
  probe->add_option("--budget", o.budget, "maximal number of classes (default 200000)");
  probe->add_option("--strategy", o.strategy, "bfs or greedy");

  auto* sc = app.add_subcommand("sign-coherence", "random framed mutations, checking c-vector signs");
  input(sc);
  sc->add_option("--trials", o.trials, "number of sequences");
  sc->add_option("--len", o.len, "maximal sequence length");
  sc->add_option("--seed", o.seed, "random seed (QUIVERLAB_SEED overrides)");

  auto* contains = app.add_subcommand("contains", "find the needle as a full subquiver of the haystack");
  contains->add_option("needle", o.needle)->required();
  contains->add_option("haystack", o.haystack)->required();

  auto* embed = app.add_subcommand("embed", "certificate embedding a target in a universal quiver");
  embed->add_option("--target", o.target, "target quiver JSON, - for stdin")->required();
  embed->add_option("--core", o.core, "somos or double4");
  embed->add_option("--symmetrizer", o.symmetrizer, "d1,d2,...")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "replay a certificate");
  verify->add_option("cert", o.cert, "certificate JSON, stdin when omitted");

  auto* plabic = app.add_subcommand("plabic", "plabic graphs");
  plabic->require_subcommand(1);
  auto* quiver_of_cmd = plabic->add_subcommand("quiver-of", "quiver of a plabic graph");
  input(quiver_of_cmd);
  auto* square = plabic->add_subcommand("square", "square move at a face");
  input(square);
  square->add_option("--face", o.face, "face, as a quiver vertex")->required();
  auto* flip = plabic->add_subcommand("flip", "flip move at an edge");
  input(flip);
  flip->add_option("--edge", o.edge, "half-edge")->required();
  auto* from = plabic->add_subcommand("from-quiver", "plabic graph of a planar quiver");
  input(from);
  from->add_flag("--augment", o.augment, "first add vertices until the conditions hold");
  from->add_flag("--contracted", o.contracted, "keep vertices of degree above 3");
  auto* uni = plabic->add_subcommand("universal", "plabic graph with an n-universal quiver");
  uni->add_option("--n", o.n)->required();

  auto* exp = app.add_subcommand("export", "normalized JSON or DOT");
  input(exp);
  exp->add_option("--format", o.format)->check(CLI::IsMember({"json", "dot"}));

  auto* srv = app.add_subcommand("serve", "local JSON service");
  srv->add_option("--port", o.port, "0 picks a free port");
  srv->add_option("--host", o.host);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto* cmd = app.get_subcommands().front();
  const std::string sub = cmd->get_subcommands().empty() ? "" : cmd->get_subcommands().front()->get_name();
  try {
    return dispatch(cmd->get_name(), sub, o, {in, out, err});
  } catch (const QuiverError& e) {
    out << io::render(io::error_json(e));
    return 1;
  } catch (const json::exception& e) {
    out << io::render(io::error_json(QuiverError(ErrorKind::ParseError, e.what())));
    return 1;
  }
}

}  // namespace quiverlab
