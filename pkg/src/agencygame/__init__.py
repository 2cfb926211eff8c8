"""Pure-strategy equilibria of a two-period politician-bureaucrat-voter agency game."""

__version__ = "0.1.0"
