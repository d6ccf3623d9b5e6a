"""Hand-labeled harmony-filter fixtures.

Each row is (pattern_text, keep, reason). Labels were derived by hand from
the four exclusion criteria: (1) a chord with a single pitch class,
(2) no chord with three or more pitch classes, (3) the bass pitch class
never changes, (4) an adjacent pair with unchanged bass sharing interval
classes above the bass (intersection reading). A type is kept only when
none of them fires.
"""

HARMONY_CASES = [
    # --- keep: genuine harmonic motion with tertian content ---
    ("<5,9*,_>[0]<4,7*,10>[5]<4,_,_>", True, "compound cadence shape"),
    ("<4,7*,_>[5]<4,_,_>[7]<4,7*,_>", True, "oscillation with moving bass"),
    ("<3,8*,_>[0]<4,6,_>[1]<4*,_,_>", True, "static pair disjoint"),
    ("<4,9*,_>[11]<3,8*,_>[10]<3,9*,_>", True, "parallel sixths"),
    ("<4,9*,_>[10]<4,9*,_>[11]<3,8*,_>", True, "sequence, bass moves"),
    ("<3,8*,_>[8]<4,9*,_>[11]<3,8*,_>", True, "sequence, bass moves"),
    ("<4,9*,_>[2]<5*,9,_>[0]<4,7*,10>", True, "static pair disjoint"),
    ("<5,9*,_>[0]<4,7*,_>[5]<3,7*,_>", True, "static pair disjoint"),
    ("<1,5,8>[3]<2,7,11>[4]<4,8,11>", True, "three full chords"),
    ("<2,6,9>[7]<3,7,10>[7]<1,4,8>", True, "three full chords"),
    ("<4,_,_>[5]<3,7*,_>[2]<4,_,_>", True, "dyads around a triad"),
    ("<7,_,_>[4]<4,9,_>[3]<5,_,_>", True, "dyads around a triad"),
    ("<4,7,_>[0]<2,6,9>[5]<4,7,10>", True, "static pair disjoint"),
    ("<3,_,_>[0]<4,7,_>[6]<2,6,_>", True, "static pair disjoint"),
    ("<9,_,_>[1]<1,4,9>[11]<2,5,_>", True, "moving bass, full chord inside"),
    ("<4,7,_>[5]<4,_,_>", True, "bigram with moving bass"),
    ("<3,8,_>[7]<4,7,10>", True, "bigram with moving bass"),
    ("<1,4,7>[2]<1,4,7>", True, "same chord, transposed bass"),
    ("<4,7,_>[5]<3,8,_>[0]<4,7,10>[2]<4,_,_>", True, "4-gram, static pair disjoint"),
    ("<2,7,_>[10]<4,10,_>[3]<4,7,_>", True, "moving bass"),
    ("<5,8,_>[1]<4,7,_>[11]<5,9,_>", True, "moving bass"),
    ("<6,9,_>[6]<3,6,_>[6]<1,_,_>", True, "moving bass"),
    ("<4,10,_>[7]<1,_,_>[5]<8,_,_>", True, "first chord tertian"),
    ("<11,_,_>[3]<2,5,9>[4]<10,_,_>", True, "middle chord tertian"),
    ("<4,7,10>[6]<4,7,10>[6]<4,7,10>", True, "repetition but bass moves"),
    ("<5,_,_>[7]<4,_,_>[7]<4,8,_>", True, "last chord tertian"),
    ("<2,_,_>[0]<5,11,_>[4]<2,9,_>", True, "static pair disjoint"),
    ("<1,_,_>[1]<1,2,_>[1]<1,_,_>", True, "chromatic bass steps"),
    ("<3,6,9>[9]<3,6,9>[3]<3,6,9>", True, "repetition but bass moves"),
    ("<10,11,_>[2]<10,_,_>[0]<1,3,_>", True, "static pair disjoint"),
    ("<5,9,_>[0]<4,7,_>[2]<5,9,_>", True, "static pair disjoint"),
    ("<8,_,_>[4]<6,11,_>[0]<3,7,10>", True, "static pair disjoint"),
    ("<2,4,_>[3]<1,_,_>[4]<1,3,_>", True, "moving bass"),
    ("<9,11,_>[8]<2,_,_>[3]<1,11,_>", True, "moving bass"),
    ("<1,2,3>[1]<9,10,11>[1]<4,5,6>", True, "clusters, moving bass"),
    ("<4,8,_>[6]<4,8,_>[0]<3,7,_>", True, "static pair disjoint"),
    ("<5,7,_>[11]<2,4,_>[0]<1,3,_>", True, "static pair disjoint"),
    ("<6,_,_>[2]<7,_,_>[9]<5,9,11>", True, "last chord tertian"),
    ("<1,6,_>[4]<2,7,_>[4]<3,8,_>", True, "parallel dyads, moving bass"),
    ("<2,5,8>[5]<8,11,_>[2]<7,_,_>", True, "first chord tertian"),
    ("<10,_,_>[3]<7,10,_>[3]<4,10,_>", True, "moving bass"),
    ("<4,7*,10>[5]<4,_,_>", True, "dominant-to-tonic bigram"),
    ("<9,11,_>[10]<1,4,7>", True, "bigram with moving bass"),
    ("<5,9,_>[0]<4,7,10>[5]<4,_,_>[7]<4,7,_>", True, "4-gram cadence continuation"),
    ("<3,6,10>[2]<3,6,10>[10]<3,6,10>", True, "repetition but bass moves"),
    ("<1,11,_>[6]<5,6,_>[1]<4,7,_>", True, "moving bass"),
    ("<2,9,_>[7]<5,_,_>[5]<2,9,_>", True, "moving bass"),
    ("<8,10,_>[9]<4,6,_>[2]<2,11,_>", True, "moving bass"),
    ("<4,7,_>[5]<3,8,_>[2]<5,9,_>[1]<4,7,10>[5]<4,_,_>", True, "5-gram cadence"),
    ("<4*,7,_>[5]<4,_,_>[7]<4,7*,_>", True, "star placement irrelevant"),
    # --- exclude: criterion 1, a single-pitch-class member ---
    ("<_,_,_>[5]<4,7,_>[2]<4,_,_>", False, "bare bass first"),
    ("<7,_,_>[5]<4,7,_>[2]<_,_,_>", False, "bare bass last"),
    ("<4,7,_>[3]<_,_,_>[4]<5,9,_>", False, "bare bass middle"),
    ("<_,_,_>[0]<_,_,_>[0]<_,_,_>", False, "all bare"),
    ("<_,_,_>[7]<4,7,10>[7]<4,_,_>", False, "bare bass first"),
    ("<_,_,_>[5]<4,7,_>", False, "bare bass in bigram"),
    ("<4,7,10>[1]<_,_,_>", False, "bare bass in bigram"),
    ("<_,_,_>[2]<_,_,_>[3]<4,7,_>", False, "two bare members"),
    ("<5,_,_>[1]<_,_,_>[1]<2,6,9>", False, "bare bass middle"),
    ("<_,_,_>[6]<11,_,_>[6]<4,8,_>", False, "bare bass first"),
    ("<_,_,_>", False, "bare unigram"),
    # --- exclude: criterion 2, never three pitch classes ---
    ("<4,_,_>[5]<7,_,_>[2]<4,_,_>", False, "dyads only"),
    ("<7,_,_>[7]<7,_,_>[7]<7,_,_>", False, "dyads only"),
    ("<1,_,_>[2]<2,_,_>[3]<3,_,_>", False, "dyads only"),
    ("<4*,_,_>[5]<4*,_,_>[7]<4*,_,_>", False, "dyads only"),
    ("<4,_,_>[5]<7,_,_>", False, "dyad bigram"),
    ("<10,_,_>[9]<8,_,_>[8]<6,_,_>", False, "dyads only"),
    ("<5,_,_>[0]<4,_,_>[6]<3,_,_>", False, "dyads only"),
    ("<11,_,_>[1]<11,_,_>[11]<11,_,_>", False, "dyads only"),
    ("<4,_,_>", False, "dyad unigram"),
    # --- exclude: criterion 3, bass pitch class never changes ---
    ("<5,9,_>[0]<4,7,_>[0]<2,10,_>", False, "static bass throughout"),
    ("<4,7,_>[0]<5,9,_>[0]<6,11,_>", False, "static bass throughout"),
    ("<1,2,_>[0]<3,4,_>[0]<5,6,_>", False, "static bass throughout"),
    ("<4,7,10>[0]<5,9,_>[0]<6,_,_>", False, "static bass throughout"),
    ("<3,8,_>[0]<4,7,10>", False, "static bass bigram"),
    ("<2,_,_>[0]<3,_,_>[0]<4,_,_>", False, "static bass, dyads too"),
    ("<10,_,_>[0]<4,7,_>[0]<9,_,_>", False, "static bass throughout"),
    ("<4,7*,10>", False, "unigram shows no change"),
    ("<5*,9,_>[0]<4,7,10>", False, "static bass bigram"),
    # --- exclude: criterion 4, static pair sharing upper interval classes ---
    ("<4,7,_>[0]<4,7,_>[5]<4,7,10>", False, "static identical pair"),
    ("<4,7,_>[0]<4,7,_>[0]<4,7,_>", False, "literal repetition"),
    ("<4,9,10>[0]<4,7,10>[5]<4,_,_>", False, "static pair shares 4,10"),
    ("<5,9,_>[2]<4,7,10>[0]<4,7,_>", False, "static pair shares 4,7"),
    ("<3,8,_>[0]<3,10,_>[4]<4,_,_>", False, "static pair shares 3"),
    ("<4,7,10>[0]<4,7,10>[7]<5,_,_>", False, "static identical pair"),
    ("<4,7,_>[0]<4,7,10>", False, "static bigram shares 4,7"),
    ("<2,6,_>[5]<2,6,_>[0]<6,9,_>", False, "static pair shares 6"),
    ("<1,4,8>[0]<4,_,_>[3]<2,5,_>", False, "static pair shares 4"),
    ("<5,9,_>[0]<4,9*,_>[5]<4,_,_>", False, "static pair shares 9"),
    ("<4,7,_>[5]<3,8,_>[0]<3,11,_>[2]<4,_,_>", False, "static pair shares 3"),
    ("<6,_,_>[0]<6,10,_>[4]<2,5,_>", False, "static pair shares 6"),
    ("<4,10,_>[6]<1,5,_>[0]<5,8,_>", False, "static pair shares 5"),
    ("<4,_,_>[0]<4,_,_>[0]<4,_,_>", False, "every criterion fires"),
    ("<_,_,_>[1]<2,_,_>[2]<3,_,_>", False, "bare member, dyads"),
    ("<4,7,10>[0]<4,7,10>[0]<4,7,10>", False, "literal repetition"),
    ("<9,_,_>[0]<9,_,_>[5]<9,_,_>", False, "dyads, static shared pair"),
    ("<1,3,5>[0]<1,3,5>[1]<1,3,5>", False, "static identical pair"),
    ("<4,_,_>[0]<4,8,_>", False, "static bigram shares 4"),
    ("<5,11,_>[0]<5,9,_>", False, "static bigram shares 5"),
    ("<2,4,6>[3]<2,4,6>[0]<2,4,6>", False, "static identical pair"),
    ("<3,_,_>[4]<3,_,_>[0]<3,6,_>", False, "static pair shares 3"),
    ("<7,9,_>[0]<7,11,_>[0]<9,11,_>", False, "static bass, shared classes"),
    ("<10,_,_>[0]<10,11,_>[1]<4,_,_>", False, "static pair shares 10"),
    ("<1,_,_>[0]<1,_,_>[0]<2,_,_>", False, "dyads, static shared pair"),
    ("<4,8,11>[11]<4,8,11>[0]<4,6,_>", False, "static pair shares 4"),
    ("<6,7,_>[0]<6,7,_>[6]<6,7,_>", False, "static identical pair"),
    ("<4,7,_>[5]<3,8,_>[2]<5,9,_>[1]<_,_,_>[5]<4,_,_>", False, "bare member in 5-gram"),
    ("<4*,7,_>[0]<4,7*,_>[5]<4,7,10>", False, "stars do not hide sharing"),
    ("<3,6,10>[0]<3,6,10>", False, "static identical bigram"),
]
