#    __       _           __
#   / /______(_)_ _  ___ / /  _______ ____  ___
#  / __/ __/ / '  \/ _ \/ _ \/ __/ _ `/ _ \/ -_)
#  \__/_/ /_/_/_/_/_.__/_.__/_/  \_,_/_//_/\__/
#

"""
Helper functions
"""

import os
import sys
import time
from typing import Callable

import numpy as np
from colorama import Fore, Style

VERBOSITY = 3
TIMESTAMPED = True
SEED = 616


##########
# Errors #
##########

class DomainError(ValueError):
    """A numeric argument lies outside the region where an operation is defined."""


class DegenerateTriangleError(DomainError):
    """Vertices (nearly) collinear: area below the relative degeneracy threshold."""


class SolverError(RuntimeError):
    """Eigensolver failed, or the constant mode could not be identified."""


# Set parameters
def set_params(verbosity: int = None, timestamped: bool = None):
    global VERBOSITY
    global TIMESTAMPED

    VERBOSITY = verbosity if verbosity is not None else VERBOSITY
    TIMESTAMPED = timestamped if timestamped is not None else TIMESTAMPED


def hi(title=None, **params):
    """
    Say hello, and initialize whatever needs initializing (globals, seed).
    """

    # Set params on request
    if params:
        set_params(**params)

    if VERBOSITY >= 1:
        print(Fore.BLUE, end='', file=sys.stderr)
        print("     __       _           __", file=sys.stderr)
        print("    / /______(_)_ _  ___ / /  _______ ____  ___", file=sys.stderr)
        print("   / __/ __/ / '  \\/ _ \\/ _ \\/ __/ _ `/ _ \\/ -_)", file=sys.stderr)
        print("   \\__/_/ /_/_/_/_/_.__/_.__/_/  \\_,_/_//_/\\__/", end='', file=sys.stderr)
        print(Style.RESET_ALL, file=sys.stderr)

    if title:
        log(title, title=True, color='blue')

    log(f"VERBOSITY is set to {VERBOSITY}", verbosity=2, timestamped=False, color='green')
    log(f"TIMESTAMPED is set to {TIMESTAMPED}", verbosity=2, timestamped=False, color='green')
    log(f"SEED is set to {SEED}", verbosity=2, timestamped=False, color='green')

    # Set seed
    np.random.seed(SEED)


# Fancy print
def log(*message, verbosity=3, sep="", timestamped=None, title=False, color=None):
    """
    Print wrapper that adds timestamp, and can be used to toggle levels of logging info.
    Everything goes to stderr, so that tables written to stdout stay clean.

    :param message: message to print
    :param verbosity: importance of message: level 1 = top importance, level 3 = lowest importance
    :param timestamped: include timestamp at start of log
    :param sep: separator
    :param title: toggle whether this is a title or not
    :param color: text color
    :return: /
    """

    # Set colors
    color_dict = {
        'red': Fore.RED,
        'blue': Fore.BLUE,
        'green': Fore.GREEN,
        'yellow': Fore.YELLOW,
        'magenta': Fore.MAGENTA,
        'cyan': Fore.CYAN,
    }
    if color and color in color_dict:
        color = color_dict[color]

    # Title always get shown (unless silenced completely)
    verbosity = 1 if title else verbosity

    # Print if log level is sufficient
    if verbosity <= VERBOSITY:

        # Print title
        if title:
            text = ''.join(str(m) for m in message)
            n = len(text)
            if color:
                print(color, end='', file=sys.stderr)
            print('\n' + (n + 4) * '#', file=sys.stderr)
            print('# ', text, ' #', sep='', file=sys.stderr)
            print((n + 4) * '#' + '\n' + Style.RESET_ALL, file=sys.stderr)

        # Print regular
        else:
            ts = timestamped if timestamped is not None else TIMESTAMPED
            t = time.strftime("%Y-%m-%d %H:%M:%S", time.localtime())
            if color:
                print(color, end='', file=sys.stderr)
            print((str(t) + (" - " if sep == "" else "-")) if ts else "", *message, Style.RESET_ALL,
                  sep=sep, file=sys.stderr)

    return


def time_it(f: Callable):
    """
    Timer decorator: shows how long execution of function took.
    :param f: function to measure
    :return: /
    """

    def timed(*args, **kwargs):
        t1 = time.time()
        res = f(*args, **kwargs)
        t2 = time.time()

        log("\'", f.__name__, "\' took ", round(t2 - t1, 3), " seconds to complete.", sep="", verbosity=2)

        return res

    timed.__name__ = f.__name__
    timed.__doc__ = f.__doc__

    return timed


def set_dir(*dirs):
    """
    If folder doesn't exist, make it.

    :param dirs: directories to check/create
    :return: /
    """

    for dir in dirs:
        if not dir:
            continue
        if not os.path.exists(dir):
            os.makedirs(dir)
            log("WARNING: Output directory <{dir}> did not exist yet, and was created.".format(dir=dir), verbosity=1)
        else:
            log("\'{}\' folder accounted for.".format(dir), verbosity=3)


if __name__ == '__main__':
    hi('Test!')
