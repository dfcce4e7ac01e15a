#include <CLI11.hpp>

#include <iostream>

#include "structrec/synth/generator.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Writes a synthetic corpus of Java-like methods"};
  structrec::synth::SynthOptions opt;
  std::string out;
  app.add_option("out", out, "Output directory")->required();
  app.add_option("--methods", opt.methods, "Distinct methods to generate");
  app.add_option("--seed", opt.seed, "RNG seed");
  app.add_option("--confuser-rate", opt.confuser_rate, "Share of short prefix-sharing methods");
  app.add_option("--twin-rate", opt.twin_rate, "Share of alpha-renamed copies");
  app.add_option("--duplicate-files", opt.duplicate_files, "Byte-identical file copies");
  app.add_option("--duplicate-methods", opt.duplicate_methods, "Methods repeated under a new name");
  app.add_option("--duplicate-projects", opt.duplicate_projects, "Whole-project mirrors");
  CLI11_PARSE(app, argc, argv);

  auto corpus = structrec::synth::generate_corpus(opt);
  structrec::synth::write_corpus(corpus, out);
  const auto& s = corpus.stats;
  std::cout << "methods " << s.methods << " (confusers " << s.confusers << ", twins " << s.twins << ")\n"
            << "files " << s.files << " in " << s.projects << " projects\n"
            << "duplicates: projects " << s.duplicate_projects << ", files " << s.duplicate_files << ", methods "
            << s.duplicate_methods << "\n";
}
