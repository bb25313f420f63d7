// Writes a seeded synthetic corpus with planted pair classes:
//   OUT/corpus.vrt  OUT/lexicon.tsv  OUT/lemmas.tsv  OUT/planted.tsv

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "coocstat/pipeline.hpp"
#include "coocstat/synthetic.hpp"

int main(int argc, char** argv) {
  using namespace coocstat;
  CLI::App app{"Generate a synthetic corpus with planted relation classes"};
  std::string out;
  std::uint64_t seed = 1;
  std::size_t sentences = 20000;
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--sentences", sentences, "Number of sentences")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    const auto corpus = synthetic::generate(synthetic::planted_preset(seed, sentences));
    const std::filesystem::path dir(out);
    write_file(dir / "corpus.vrt", [&](std::ostream& o) { write_corpus(o, corpus.sentences); });
    write_file(dir / "lexicon.tsv", [&](std::ostream& o) { synthetic::write_lexicon(o, corpus); });
    write_file(dir / "lemmas.tsv", [&](std::ostream& o) { synthetic::write_filler_vocabulary(o, corpus); });
    write_file(dir / "planted.tsv", [&](std::ostream& o) { write_pairs(o, corpus.planted); });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
