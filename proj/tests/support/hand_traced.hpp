#pragma once

// Programs traced by hand; outputs and step counts are frozen from the traces.

#include <string>
#include <vector>

namespace bss::testkit {

struct TracedCase {
  std::string input;   // comma-separated values
  std::string output;  // comma-separated values
  unsigned steps;
};

struct TracedProgram {
  std::string name;
  std::string source;
  std::string oracle;  // "" for none, else an oracle_by_name() name or "set:4"
  std::vector<TracedCase> cases;
};

inline const std::vector<TracedProgram>& hand_traced() {
  static const std::vector<TracedProgram> programs{
      {"doubling", "1: add Z1 = Z1 + Z1\n2: halt\n", "", {{"3", "6", 2}, {"sqrt(2)", "2*sqrt(2)", 2}}},
      {"trivial", "1: halt\n", "", {{"5", "5", 1}, {"1, 2", "1, 2", 1}}},
      {"fall-through", "1: add Z1 = Z1 + Z1\n", "", {{"2", "4", 2}}},
      {"equality cascade",
       "1: set Z2 = 1\n"
       "2: eq Z1 -> 10, 3\n"
       "3: sub Z3 = Z1 - Z2\n"
       "4: eq Z3 -> 10, 5\n"
       "5: sub Z3 = Z3 - Z2\n"
       "6: eq Z3 -> 10, 7\n"
       "7: set Z1 = 0\n"
       "8: sub Z1 = Z1 - Z2\n"
       "9: halt\n"
       "10: halt\n",
       "",
       {{"0", "0", 3}, {"1", "1", 5}, {"2", "2", 7}, {"5", "-1", 9}, {"sqrt(2)", "-1", 9}}},
      {"triple", "1: add Z2 = Z1 + Z1\n2: add Z1 = Z2 + Z1\n3: halt\n", "", {{"4", "12", 3}}},
      {"countdown sum",
       "1: set Z2 = 1\n"
       "2: set Z3 = 0\n"
       "3: eq Z1 -> 7, 4\n"
       "4: add Z3 = Z3 + Z1\n"
       "5: sub Z1 = Z1 - Z2\n"
       "6: eq Z4 -> 3, 3\n"
       "7: add Z1 = Z3 + Z4\n"
       "8: halt\n",
       "",
       {{"3", "6", 17}, {"0", "0", 5}}},
      {"append first",
       "1: inc I1\n"
       "2: idx I2 = 1\n"
       "3: copy Z[I1] = Z[I2]\n"
       "4: halt\n",
       "",
       {{"7, 8", "7, 8, 7", 4}}},
      {"duplicate tuple",
       "1: idx I2 = 1\n"
       "2: inc I1\n"
       "3: copy Z[I1] = Z[I2]\n"
       "4: ieq I2, I3 -> 7, 5\n"
       "5: inc I2\n"
       "6: ieq I1, I1 -> 2, 2\n"
       "7: halt\n",
       "",
       {{"4, 5, 6", "4, 5, 6, 4, 5, 6", 15}, {"9", "9, 9", 5}}},
      {"absolute value",
       "1: ge Z1 -> 4, 2\n"
       "2: sub Z1 = Z2 - Z1\n"
       "3: halt\n"
       "4: halt\n",
       "",
       {{"-3", "3", 3}, {"2 - 2*sqrt(2)", "-2 + 2*sqrt(2)", 3}, {"pi", "pi", 2}}},
      {"floor",
       "1: set Z2 = 1\n"
       "2: set Z3 = 0\n"
       "3: sub Z4 = Z1 - Z2\n"
       "4: ge Z4 -> 5, 8\n"
       "5: add Z1 = Z4 + Z5\n"
       "6: add Z3 = Z3 + Z2\n"
       "7: eq Z5 -> 3, 3\n"
       "8: add Z1 = Z3 + Z5\n"
       "9: halt\n",
       "",
       {{"5/2", "2", 16}, {"pi", "3", 21}}},
      {"oracle doubling",
       "1: oracle -> 3, 2\n"
       "2: add Z1 = Z1 + Z1\n"
       "3: halt\n",
       "set:4",
       {{"4", "4", 2}, {"2", "4", 3}}},
  };
  return programs;
}

}  // namespace bss::testkit
