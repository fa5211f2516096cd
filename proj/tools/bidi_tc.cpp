// Copyright 2026 The bidi-tc Authors
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

// bidi-tc: command-line driver over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bidi_tc.h"

namespace {

struct Args {
  std::string file;
  std::string out;
  std::string main_name;
  bool basic = false;
  bool dump_theory = false;
  bool json = false;
  bool keep_going = false;
};

using Handle = std::unique_ptr<bidi_program, decltype(&bidi_program_free)>;

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

int report(bidi_program* prog, const Args& args, bidi_status st) {
  if (const char* d = bidi_program_diagnostics(prog, args.json)) std::cerr << d;
  if (st == BIDI_USAGE_ERROR) std::cerr << "bidi-tc: invalid request\n";
  return static_cast<int>(st);
}

int run(const std::string& command, const Args& args) {
  std::string text;
  if (!read_file(args.file, text)) {
    std::cerr << "bidi-tc: cannot read " << args.file << "\n";
    return BIDI_USAGE_ERROR;
  }
  Handle prog(bidi_program_new(), &bidi_program_free);
  if (!prog) return BIDI_INTERNAL_ERROR;
  bidi_program_set_mode(prog.get(),
                        args.basic ? BIDI_MODE_BASIC : BIDI_MODE_BIDIRECTIONAL);
  bidi_program_set_keep_going(prog.get(), args.keep_going);

  bidi_status st = bidi_program_compile(prog.get(), args.file.c_str(), text.data(),
                                        text.size());
  if (st == BIDI_OK && command != "check") st = bidi_program_verify(prog.get());
  if (st == BIDI_OK && command == "eval") {
    st = bidi_program_eval(prog.get(), args.main_name.c_str());
    if (st == BIDI_USAGE_ERROR) {
      std::cerr << "bidi-tc: no top-level binding named " << args.main_name << "\n";
      return st;
    }
  }
  if (st != BIDI_OK) return report(prog.get(), args, st);

  if (command == "check") {
    std::cout << bidi_program_signatures(prog.get());
  } else if (command == "elaborate") {
    const char* core = bidi_program_core_dump(prog.get());
    if (args.out.empty()) {
      std::cout << core;
    } else {
      std::ofstream out(args.out, std::ios::binary);
      if (!(out << core)) {
        std::cerr << "bidi-tc: cannot write " << args.out << "\n";
        return BIDI_USAGE_ERROR;
      }
    }
  } else if (command == "verify") {
    std::cout << args.file << ": ok\n";
  } else if (command == "eval") {
    std::cout << bidi_program_eval_result(prog.get()) << "\n";
  }
  if (args.dump_theory) std::cout << bidi_program_theory_dump(prog.get());
  return BIDI_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type class elaboration with bidirectional instances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bidi_version());

  Args args;
  app.add_flag("--basic", args.basic, "Only use instances in the forward direction");
  app.add_flag("--dump-theory", args.dump_theory, "Print the final program theory");
  app.add_flag("--json", args.json, "Print diagnostics as JSON, one per line");
  app.add_flag("--keep-going", args.keep_going, "Report every error");

  auto check = app.add_subcommand("check", "Print inferred signatures");
  auto elaborate = app.add_subcommand("elaborate", "Print the elaborated core");
  auto verify = app.add_subcommand("verify", "Elaborate and type check the core");
  auto eval = app.add_subcommand("eval", "Verify, then evaluate a binding");
  for (auto* sub : {check, elaborate, verify, eval}) {
    sub->fallthrough();
    sub->add_option("FILE", args.file, "Source file")->required();
  }
  elaborate->add_option("-o,--output", args.out, "Write the core to a file");
  eval->add_option("--main", args.main_name, "Binding to evaluate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : BIDI_USAGE_ERROR;
  }
  for (auto* sub : {check, elaborate, verify, eval}) {
    if (sub->parsed()) return run(sub->get_name(), args);
  }
  return BIDI_USAGE_ERROR;
}
