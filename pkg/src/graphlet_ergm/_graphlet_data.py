"""Reference tables for the 30 connected 2-5 node subgraph classes.

One labeled representative per class, its per-node automorphism orbit ids
(0-72, 0-based, in the published ordering) and per-edge automorphism orbit
ids (1-69, 1-based).  The signed graphlet/edge-orbit relation lives in
TABLE_POSITIVE / TABLE_NEGATIVE; `build_catalog` re-derives it from the
representatives and refuses to start on any mismatch.
"""

# (size, edges, node orbit per representative node, edge orbit per edge)
GRAPHLETS = (
    # G0
    (2, ((0, 1),), (0, 0), {(0, 1): 1}),
    # G1
    (3, ((0, 1), (1, 2)), (1, 2, 1), {(0, 1): 2, (1, 2): 2}),
    # G2
    (3, ((0, 1), (0, 2), (1, 2)), (3, 3, 3), {(0, 1): 3, (0, 2): 3, (1, 2): 3}),
    # G3
    (4, ((0, 1), (1, 2), (0, 3)), (5, 5, 4, 4), {(0, 1): 5, (0, 3): 4, (1, 2): 4}),
    # G4
    (4, ((0, 1), (0, 2), (0, 3)), (7, 6, 6, 6), {(0, 1): 6, (0, 2): 6, (0, 3): 6}),
    # G5
    (4, ((0, 2), (1, 2), (0, 3), (1, 3)), (8, 8, 8, 8), {(0, 2): 7, (0, 3): 7, (1, 2): 7, (1, 3): 7}),
    # G6
    (4, ((0, 1), (0, 2), (1, 2), (0, 3)), (11, 10, 10, 9), {(0, 1): 9, (0, 2): 9, (0, 3): 10, (1, 2): 8}),
    # G7
    (4, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3)), (13, 13, 12, 12), {(0, 1): 12, (0, 2): 11, (0, 3): 11, (1, 2): 11, (1, 3): 11}),
    # G8
    (4, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)), (14, 14, 14, 14), {(0, 1): 13, (0, 2): 13, (0, 3): 13, (1, 2): 13, (1, 3): 13, (2, 3): 13}),
    # G9
    (5, ((0, 2), (1, 2), (1, 3), (0, 4)), (16, 16, 17, 15, 15), {(0, 2): 15, (0, 4): 14, (1, 2): 15, (1, 3): 14}),
    # G10
    (5, ((0, 1), (1, 2), (0, 3), (0, 4)), (21, 20, 18, 19, 19), {(0, 1): 18, (0, 3): 17, (0, 4): 17, (1, 2): 16}),
    # G11
    (5, ((0, 1), (0, 2), (0, 3), (0, 4)), (23, 22, 22, 22, 22), {(0, 1): 19, (0, 2): 19, (0, 3): 19, (0, 4): 19}),
    # G12
    (5, ((0, 1), (0, 2), (1, 2), (1, 3), (0, 4)), (26, 26, 25, 24, 24), {(0, 1): 21, (0, 2): 20, (0, 4): 22, (1, 2): 20, (1, 3): 22}),
    # G13
    (5, ((0, 1), (1, 2), (1, 3), (2, 3), (0, 4)), (28, 30, 29, 29, 27), {(0, 1): 26, (0, 4): 25, (1, 2): 24, (1, 3): 24, (2, 3): 23}),
    # G14
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (0, 4)), (33, 32, 32, 31, 31), {(0, 1): 28, (0, 2): 28, (0, 3): 29, (0, 4): 29, (1, 2): 27}),
    # G15
    (5, ((1, 2), (0, 3), (2, 3), (0, 4), (1, 4)), (34, 34, 34, 34, 34), {(0, 3): 30, (0, 4): 30, (1, 2): 30, (1, 4): 30, (2, 3): 30}),
    # G16
    (5, ((0, 2), (1, 2), (0, 3), (1, 3), (0, 4)), (38, 36, 37, 37, 35), {(0, 2): 32, (0, 3): 32, (0, 4): 33, (1, 2): 31, (1, 3): 31}),
    # G17
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4)), (42, 41, 40, 40, 39), {(0, 1): 35, (0, 2): 36, (0, 3): 36, (0, 4): 37, (1, 2): 34, (1, 3): 34}),
    # G18
    (5, ((0, 1), (0, 2), (0, 3), (2, 3), (0, 4), (1, 4)), (44, 43, 43, 43, 43), {(0, 1): 39, (0, 2): 39, (0, 3): 39, (0, 4): 39, (1, 4): 38, (2, 3): 38}),
    # G19
    (5, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4)), (47, 48, 48, 46, 45), {(0, 1): 42, (0, 2): 42, (0, 4): 43, (1, 2): 41, (1, 3): 40, (2, 3): 40}),
    # G20
    (5, ((0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)), (50, 50, 49, 49, 49), {(0, 2): 44, (0, 3): 44, (0, 4): 44, (1, 2): 44, (1, 3): 44, (1, 4): 44}),
    # G21
    (5, ((0, 1), (1, 2), (0, 3), (2, 3), (0, 4), (1, 4)), (53, 53, 51, 51, 52), {(0, 1): 46, (0, 3): 47, (0, 4): 45, (1, 2): 47, (1, 4): 45, (2, 3): 48}),
    # G22
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)), (55, 55, 54, 54, 54), {(0, 1): 50, (0, 2): 49, (0, 3): 49, (0, 4): 49, (1, 2): 49, (1, 3): 49, (1, 4): 49}),
    # G23
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4)), (58, 57, 57, 57, 56), {(0, 1): 51, (0, 2): 51, (0, 3): 51, (0, 4): 53, (1, 2): 52, (1, 3): 52, (2, 3): 52}),
    # G24
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (2, 3), (0, 4), (1, 4)), (61, 60, 60, 59, 59), {(0, 1): 56, (0, 2): 56, (0, 3): 55, (0, 4): 55, (1, 2): 57, (1, 4): 54, (2, 3): 54}),
    # G25
    (5, ((0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4)), (63, 63, 64, 64, 62), {(0, 2): 58, (0, 3): 58, (0, 4): 60, (1, 2): 58, (1, 3): 58, (1, 4): 60, (2, 3): 59}),
    # G26
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4)), (67, 67, 66, 66, 65), {(0, 1): 62, (0, 2): 63, (0, 3): 63, (0, 4): 61, (1, 2): 63, (1, 3): 63, (1, 4): 61, (2, 3): 64}),
    # G27
    (5, ((0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4)), (69, 68, 68, 68, 68), {(0, 1): 66, (0, 2): 66, (0, 3): 66, (0, 4): 66, (1, 3): 65, (1, 4): 65, (2, 3): 65, (2, 4): 65}),
    # G28
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4)), (71, 71, 71, 70, 70), {(0, 1): 68, (0, 2): 68, (0, 3): 67, (0, 4): 67, (1, 2): 68, (1, 3): 67, (1, 4): 67, (2, 3): 67, (2, 4): 67}),
    # G29
    (5, ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)), (72, 72, 72, 72, 72), {(0, 1): 69, (0, 2): 69, (0, 3): 69, (0, 4): 69, (1, 2): 69, (1, 3): 69, (1, 4): 69, (2, 3): 69, (2, 4): 69, (3, 4): 69}),
)

# Signed relation between graphlet types and edge automorphism orbits:
# positive[g] are the edge orbits owned by graphlet g (placing one on an
# added edge completes a copy of g); negative[g] are edge orbits of larger
# graphlets whose deletion leaves an induced copy of g.
TABLE_POSITIVE = {
    0: (1,),
    1: (2,),
    2: (3,),
    3: (4, 5),
    4: (6,),
    5: (7,),
    6: (8, 9, 10),
    7: (11, 12),
    8: (13,),
    9: (14, 15),
    10: (16, 17, 18),
    11: (19,),
    12: (20, 21, 22),
    13: (23, 24, 25, 26),
    14: (27, 28, 29),
    15: (30,),
    16: (31, 32, 33),
    17: (34, 35, 36, 37),
    18: (38, 39),
    19: (40, 41, 42, 43),
    20: (44,),
    21: (45, 46, 47, 48),
    22: (49, 50),
    23: (51, 52, 53),
    24: (54, 55, 56, 57),
    25: (58, 59, 60),
    26: (61, 62, 63, 64),
    27: (65, 66),
    28: (67, 68),
    29: (69,),
}

TABLE_NEGATIVE = {
    0: (),
    1: (3,),
    2: (),
    3: (7, 9),
    4: (8,),
    5: (12,),
    6: (11,),
    7: (13,),
    8: (),
    9: (21, 24, 30, 32),
    10: (20, 23, 28, 31),
    11: (27,),
    12: (36, 40, 48),
    13: (39, 42, 47),
    14: (34, 38),
    15: (46,),
    16: (35, 41, 44, 45),
    17: (49, 52, 54),
    18: (57,),
    19: (51, 55, 60),
    20: (50, 59),
    21: (56, 58),
    22: (64,),
    23: (61,),
    24: (63, 65),
    25: (62, 66),
    26: (67,),
    27: (68,),
    28: (69,),
    29: (),
}
