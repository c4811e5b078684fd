/*
   Copyright 2026 The Attseq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Regenerates the golden files under fixtures/. Output is a pure function of the constants
// below, so rerunning must leave the tree unchanged.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <attseq/enclave.hpp>
#include <attseq/fixtures.hpp>
#include <attseq/json_io.hpp>

namespace fs = std::filesystem;
using namespace attseq;

namespace {

bool write(const fs::path& p, std::string_view content) {
    fs::create_directories(p.parent_path());
    std::ofstream out{p, std::ios::binary | std::ios::trunc};
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        std::cerr << "cannot write " << p << "\n";
        return false;
    }
    std::cout << "wrote " << p.string() << " (" << content.size() << " bytes)\n";
    return true;
}

bool write_bytes(const fs::path& p, const Bytes& b) {
    return write(p, std::string_view{reinterpret_cast<const char*>(b.data()), b.size()});
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path{argv[1]} : fs::path{"fixtures"};
    auto set = build_fixture_set();
    if (!set) {
        std::cerr << "fixture generation failed: " << set.error() << "\n";
        return 1;
    }
    bool ok = true;
    for (const auto& [name, bytes] : set->quotes) {
        ok &= write_bytes(root / "quotes" / (name + ".bin"), bytes);
    }
    ok &= write(root / "quotes" / "honest_v4.report_data.hex", to_hex(set->honest_report_data) + "\n");
    ok &= write(root / "collateral" / "valid.json", to_json(set->valid_collateral).dump(2) + "\n");
    ok &= write(root / "collateral" / "revoked.json", to_json(set->revoked_collateral).dump(2) + "\n");
    ok &= write(root / "policy" / "default.json", to_json(set->policy).dump(2) + "\n");
    return ok ? 0 : 1;
}
