#pragma once

#include <iosfwd>
#include <string>

#include "qldpc/gf2.hpp"

namespace qldpc {

/// MacKay "alist" text format.
///   line 1: N M
///   line 2: max column degree, max row degree
///   line 3: the N column degrees
///   line 4: the M row degrees
///   then N lines of 1-based row indices per column (zero-padded to the max),
///   then M lines of 1-based column indices per row.
/// Padding zeros are ignored on read; the writer pads.
SparseBinaryMatrix read_alist(std::istream &in);
SparseBinaryMatrix read_alist_file(const std::string &path);

void write_alist(std::ostream &out, const SparseBinaryMatrix &m);
void write_alist_file(const std::string &path, const SparseBinaryMatrix &m);

}  // namespace qldpc
