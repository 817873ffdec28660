#pragma once

#include <string>
#include <string_view>

namespace tweetsense {

/// Porter suffix-stripping stemmer, following Martin Porter's frozen
/// reference implementation (the one that produces the published
/// voc.txt/output.txt pairs). Input is expected lowercase; words of one or
/// two letters are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace tweetsense
