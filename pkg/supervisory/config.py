EPSILON = 'ε'
REPORT_WORD_LENGTH = 8
REPORT_WORD_LIMIT = 24
LEVELS = ('k', '1+k', '2+k')
ROUTES = ('strong_inclusion', 'nonconflicting_intersection', 'observer_consistency')
OBSERVATION_MODES = ('full', 'flags')
REPORT_FORMATS = ('human', 'machine')
