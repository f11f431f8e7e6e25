// Copyright 2026 The curate-se Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generates synthetic inputs so the pipeline can run without the
// neural scorer: score manifests, the duration-table fixture, and small
// audio corpora.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "curate_se/error.hpp"
#include "curate_se/synth.hpp"

int main(int argc, char** argv) {
  using namespace curate_se;
  CLI::App app{"Synthetic fixture generator for curate_se", "curate_se_fixture"};
  app.require_subcommand(1);

  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string out, config_out, dir;
  int rate = 16000;

  auto* scores = app.add_subcommand("scores", "Random correlated score manifest");
  scores->add_option("--n", n);
  scores->add_option("--seed", seed);
  scores->add_option("--out", out)->required();

  auto* durations = app.add_subcommand("durations", "Manifest following the per-dataset duration table");
  durations->add_option("--seed", seed);
  durations->add_option("--out", out)->required();
  durations->add_option("--config-out", config_out, "Also write the threshold config");

  auto* corpus = app.add_subcommand("corpus", "Speech, noise and RIR WAVs with manifests");
  corpus->add_option("--dir", dir)->required();
  corpus->add_option("--n", n);
  corpus->add_option("--seed", seed);
  corpus->add_option("--rate", rate)->check(CLI::IsMember({8000, 16000, 22050, 24000, 32000, 44100, 48000}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (scores->parsed()) {
      save_score_manifest(synth::score_manifest(n, seed), out);
    } else if (durations->parsed()) {
      const auto text = synth::reference_threshold_config();
      const auto cfg = parse_curation_config(text);
      save_score_manifest(synth::duration_fixture(cfg, seed), out);
      if (!config_out.empty()) {
        std::ofstream(config_out) << text;
      }
    } else {
      const auto paths = synth::write_corpus(dir, n, seed, rate);
      std::cout << paths.speech_manifest.string() << '\n'
                << paths.noise_manifest.string() << '\n'
                << paths.rir_manifest.string() << '\n';
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
