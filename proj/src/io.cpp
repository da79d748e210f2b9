#include "ontorank/io.hpp"

#include <iostream>
#include <system_error>
#include <unistd.h>

#include "ontorank/errors.hpp"

namespace ontorank {

std::ifstream open_input(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(Errc::FileNotFound, "cannot open '" + path.string() + "'");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::FileNotFound, "cannot open '" + path.string() + "'");
  }
  return in;
}

void for_each_line(std::istream& in,
                   const std::function<void(std::size_t, std::string_view)>& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    // UTF-8 byte order mark on the first line.
    if (number == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    fn(number, view);
  }
}

void write_atomically(const std::filesystem::path& path,
                      std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(Errc::FileNotFound, "cannot write '" + tmp.string() + "'");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(Errc::FileNotFound, "failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::FileNotFound, "cannot replace '" + path.string() + "'");
  }
}

std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

void warn_to_stderr(std::string_view message) {
  std::cerr << "warning: " << message << '\n';
}

}  // namespace ontorank
