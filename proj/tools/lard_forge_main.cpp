// Copyright 2026 The lard-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "lard_forge/errors.hpp"
#include "lard_forge/pipeline.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

int fail(const char* type, const std::string& message, int code) {
    nlohmann::ordered_json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
    return code;
}

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Run configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", opts.seed, "Override the config seed");
    cmd->add_option("--out", opts.out_dir, "Override the output directory");
}

lard_forge::RunConfig load_config(const CommonOptions& opts) {
    auto config = lard_forge::RunConfig::from_file(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.out_dir) config.output_dir = *opts.out_dir;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lard-forge: landing-approach scenario generation and automatic runway annotation"};
    app.require_subcommand(1);

    CommonOptions validate_opts;
    CLI::App* validate = app.add_subcommand("validate-db", "Check every runway in the database");
    add_common(validate, validate_opts);

    CommonOptions scenario_opts;
    CLI::App* scenario = app.add_subcommand("gen-scenario", "Sample poses and write the renderer scenario");
    add_common(scenario, scenario_opts);

    CommonOptions annotate_opts;
    std::optional<std::string> metadata_path;
    CLI::App* annotate = app.add_subcommand("annotate", "Produce per-frame labels");
    add_common(annotate, annotate_opts);
    annotate->add_option("--metadata", metadata_path,
                         "Renderer metadata JSON to annotate instead of sampling");

    CommonOptions stats_opts;
    std::optional<std::string> labels_path;
    CLI::App* stats = app.add_subcommand("stats", "Dataset-quality report over a labels file");
    add_common(stats, stats_opts);
    stats->add_option("--labels", labels_path, "Labels CSV (default: <out>/labels.csv)");

    CommonOptions pipeline_opts;
    CLI::App* pipeline = app.add_subcommand("pipeline", "scenario + labels + statistics in one run");
    add_common(pipeline, pipeline_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const int failures = lard_forge::cmd_validate_db(load_config(validate_opts), std::cout);
            return failures == 0 ? 0 : kExitValidation;
        }
        if (scenario->parsed()) {
            lard_forge::cmd_gen_scenario(load_config(scenario_opts), std::cout);
        } else if (annotate->parsed()) {
            std::optional<std::filesystem::path> metadata;
            if (metadata_path) metadata = *metadata_path;
            lard_forge::cmd_annotate(load_config(annotate_opts), metadata, std::cout);
        } else if (stats->parsed()) {
            std::optional<std::filesystem::path> labels;
            if (labels_path) labels = *labels_path;
            lard_forge::cmd_stats(load_config(stats_opts), labels, std::cout);
        } else if (pipeline->parsed()) {
            lard_forge::cmd_pipeline(load_config(pipeline_opts), std::cout);
        }
        return 0;
    } catch (const lard_forge::IoError& e) {
        return fail("IoError", e.what(), kExitIo);
    } catch (const lard_forge::ParseError& e) {
        return fail("ParseError", e.what(), kExitValidation);
    } catch (const lard_forge::ValidationError& e) {
        return fail("ValidationError", e.what(), kExitValidation);
    } catch (const lard_forge::SchemaError& e) {
        return fail("SchemaError", e.what(), kExitValidation);
    } catch (const lard_forge::RangeError& e) {
        return fail("RangeError", e.what(), kExitValidation);
    } catch (const lard_forge::Error& e) {
        return fail("Error", e.what(), kExitValidation);
    } catch (const std::exception& e) {
        return fail("Error", e.what(), kExitValidation);
    }
}
