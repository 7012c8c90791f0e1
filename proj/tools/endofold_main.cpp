// Command line front end: parse an endomorphism description, run an
// analysis, print a human-readable summary and optionally the JSON report.
//
// Exit codes: 0 success (any verdict), 2 parse or precondition error,
// 3 iteration cap exceeded.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "endofold/endofold.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw endofold::Error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis of free group endomorphisms as graph maps"};
  app.require_subcommand(1);

  std::string input_path;
  std::string json_path;
  endofold::RunFlags flags;
  std::string twist;
  std::vector<std::string> gens;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input_path, "endomorphism description file")->required();
    sub->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");
    sub->add_option("--cap", flags.cap, "iteration cap");
    return sub;
  };

  add_common(app.add_subcommand("fold", "fold the rose representative to an immersion"));
  auto* images = add_common(app.add_subcommand("images", "iterated image subgroup graphs"));
  images->add_option("--k", flags.k, "number of iterates")->capture_default_str();
  add_common(app.add_subcommand("traintrack",
                                "transition matrix, eigenvalue, legality, Whitehead graphs"));
  add_common(app.add_subcommand("immersion-rep", "find the immersion representative"));
  auto* certify = add_common(
      app.add_subcommand("certify", "full irreducibility and hyperbolicity certificates"));
  certify->add_option("--max-n", flags.max_n, "periodic class search: iterate bound");
  certify->add_option("--max-len", flags.max_len, "periodic class search: word length bound");
  auto* orbit = add_common(app.add_subcommand("orbit", "spine orbit of a marked rose (rank 2)"));
  orbit->add_option("--start", flags.start,
                    "marking as a word over a/A/b/B (outer automorphism generators)");
  auto* pset =
      add_common(app.add_subcommand("periodic-set", "periodic simplices in the spine (rank 2)"));
  pset->add_option("--radius", flags.radius, "rose enumeration radius")->capture_default_str();
  auto* inv = add_common(app.add_subcommand("invariant", "finite-index search for an invariant subgroup"));
  inv->add_option("--gens", gens, "subgroup generators");
  inv->add_option("--twist", twist, "inner twist word");

  CLI11_PARSE(app, argc, argv);
  flags.gens = gens;
  flags.twist = twist;

  try {
    endofold::EndoSpec spec = endofold::parse_endo(read_file(input_path));
    std::string command = app.get_subcommands().front()->get_name();
    endofold::Report report = endofold::run(command, spec, flags);
    std::cout << endofold::human_readable(report);
    if (!json_path.empty()) {
      std::string dump = report.to_json().dump(2);
      if (json_path == "-")
        std::cout << dump << "\n";
      else {
        std::ofstream out(json_path);
        out << dump << "\n";
      }
    }
    return report.exit_code;
  } catch (const endofold::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
