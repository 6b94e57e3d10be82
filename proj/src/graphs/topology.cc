// graphs/topology.cc

// Copyright 2026  The chainlet authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "graphs/topology.h"

#include <set>

#include "base/error.h"

namespace chainlet {

void PhoneSet::Validate() const {
  CL_REQUIRE(!symbols.empty());
  CL_REQUIRE(silence >= 0 && silence < NumPhones());
  std::set<std::string> seen(symbols.begin(), symbols.end());
  if (static_cast<int>(seen.size()) != NumPhones())
    CL_CONTRACT_ERR << "phone symbols are not unique";
}

PhoneSet MakePhoneSet(int num_content_phones) {
  CL_REQUIRE(num_content_phones >= 1);
  PhoneSet phones;
  phones.symbols.push_back("sil");
  for (int i = 1; i <= num_content_phones; ++i)
    phones.symbols.push_back("p" + std::to_string(i));
  phones.silence = 0;
  return phones;
}

Topology::Topology(const PhoneSet &phones)
    : num_phones_(phones.NumPhones()), silence_(phones.silence) {
  phones.Validate();
}

int Topology::UnitId(int left_context, int phone) const {
  CL_REQUIRE(left_context >= 0 && left_context < num_phones_);
  CL_REQUIRE(phone >= 0 && phone < num_phones_);
  return left_context * num_phones_ + phone;
}

}  // namespace chainlet
