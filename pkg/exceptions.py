class NotPointed(Exception):
    pass


class InfiniteHoles(Exception):
    pass


class NotInSemigroup(Exception):
    pass


class GcdNotOne(Exception):
    pass


class UnsupportedSystem(Exception):
    pass


class UsageError(Exception):
    pass


class ConsistencyError(Exception):
    pass
