#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fk {

// floerkit <command> ...; args excludes the program name.
// Exit codes: 0 verified, 1 a verdict failed, 2 input error (field path on err).
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a of a file's bytes, as 16 hex digits
std::string file_digest(const std::string& path);

}  // namespace fk
