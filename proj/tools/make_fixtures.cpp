// Copyright 2026 The DPoS Governance Authors
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


// Regenerates the bundled test fixtures:
//   make_fixtures OUT_DIR

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fixture_gen.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUT_DIR\n";
    return 2;
  }
  std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const dpos::store::EventLog& log) {
    std::ofstream(dir / name, std::ios::binary) << dpos::store::events_jsonl(log);
    std::cout << "wrote " << log.size() << " records to " << (dir / name).string() << '\n';
  };
  write("events_1000.jsonl", dpos::fixtures::make_event_log());
  write("steem_takeover.jsonl", dpos::fixtures::steem_takeover_log().log);
  write("whale.jsonl", dpos::fixtures::whale_log().log);
  return 0;
}
