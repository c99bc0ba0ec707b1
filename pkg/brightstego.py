# BrightStego 🚀 AGPL-3.0 License
"""
Hide byte payloads in uncompressed 24-bit BMP images and recover them, using intensity-partition 3-LSB embedding
followed by a brightness shift.

Usage - commands:
    $ python brightstego.py cover --in lake.bmp --out stego.bmp --text-file msg.txt --level 40 --mode 7 --upper 100
    $ python brightstego.py cover --in lake.bmp --out stego.bmp --payload-file doc.pdf --params params.default.yaml
    $ python brightstego.py uncover --in stego.bmp --out msg.txt                      # recovered bytes to file
    $ python brightstego.py uncover --in stego.bmp --as-text --restore restored.bmp   # to stdout, undo brightening
    $ python brightstego.py inspect --in lake.bmp --level 40 --mode 7 --upper 100 --census 244
    $ python brightstego.py inspect --in stego.bmp --ref lake.bmp --plot histogram.png --format yaml

Usage - brightness modes:
    1 R, 2 G, 3 B, 4 R+G, 5 R+B, 6 G+B, 7 R+G+B

Exit status:
    0 success
    1 usage or configuration error
    2 BMP format or input file error
    3 payload exceeds capacity
    4 invalid parameters
    5 not a stego image
"""

import argparse
import functools
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import yaml

FILE = Path(__file__).resolve()
ROOT = FILE.parents[0]  # BrightStego root directory
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))  # add ROOT to PATH

from utils import StegoError
from utils.bmp import BmpError, load_bmp, save_bmp
from utils.general import (
    LOGGER,
    VERBOSE,
    Profile,
    check_file,
    check_yaml,
    colorstr,
    print_args,
    set_logging,
    yaml_load,
    yaml_save,
)
from utils.metrics import DimensionMismatch, analyze, capacity, format_report, psnr
from utils.payload import CorruptFrame, MessageTooLarge, deframe, frame
from utils.plots import plot_intensity_histogram
from utils.stego import (
    CapacityExceeded,
    ImageTooSmall,
    InvalidParams,
    NotAStegoImage,
    StegoParams,
    cover,
    extract_params,
    restore_brightness,
    uncover,
)

COMMANDS = "cover", "uncover", "inspect"
PARAM_KEYS = "brightness_level", "brightness_mode", "upperbound_intensity"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_CAPACITY = 3
EXIT_PARAMS = 4
EXIT_NOT_STEGO = 5


class ConfigError(StegoError):
    """Missing, conflicting or unreadable command options."""


EXIT_CODES = (
    (ConfigError, EXIT_USAGE),
    ((BmpError, DimensionMismatch, OSError), EXIT_FORMAT),
    ((CapacityExceeded, MessageTooLarge, ImageTooSmall), EXIT_CAPACITY),
    (InvalidParams, EXIT_PARAMS),
    ((NotAStegoImage, CorruptFrame), EXIT_NOT_STEGO),
)


@dataclass
class CommandConfig:
    """Options of one command invocation, built from the parsed command line."""

    command: str
    input_path: Path
    output_path: Optional[Path] = None
    text: Optional[str] = None
    message_file: Optional[Path] = None
    brightness_level: Optional[int] = None
    brightness_mode: Optional[int] = None
    upperbound_intensity: Optional[int] = None
    params_file: Optional[Path] = None
    save_params: Optional[Path] = None
    census: int = 244
    ref: Optional[Path] = None
    as_text: bool = False
    restore: Optional[Path] = None
    plot: Optional[Path] = None
    format: str = "text"

    @classmethod
    def from_opt(cls, opt):
        """Maps an argparse namespace from `parse_opt` onto a CommandConfig."""
        return cls(
            command=opt.command,
            input_path=Path(opt.input),
            output_path=Path(opt.out) if opt.out else None,
            text=opt.text,
            message_file=Path(opt.text_file or opt.payload_file) if (opt.text_file or opt.payload_file) else None,
            brightness_level=opt.level,
            brightness_mode=opt.mode,
            upperbound_intensity=opt.upper,
            params_file=Path(opt.params) if opt.params else None,
            save_params=Path(opt.save_params) if opt.save_params else None,
            census=opt.census,
            ref=Path(opt.ref) if opt.ref else None,
            as_text=opt.as_text,
            restore=Path(opt.restore) if opt.restore else None,
            plot=Path(opt.plot) if opt.plot else None,
            format=opt.format,
        )

    def raw_params(self):
        """Returns the parameter mapping from the YAML file (if any) overridden by explicit flags."""
        d = dict.fromkeys(PARAM_KEYS)
        if self.params_file:
            try:
                data = yaml_load(check_yaml(self.params_file)) or {}
            except (OSError, ValueError, yaml.YAMLError) as e:
                raise ConfigError(f"cannot read params file {self.params_file}: {e}") from e
            if not isinstance(data, dict) or set(data) - set(PARAM_KEYS):
                raise ConfigError(f"params file {self.params_file} must map only {', '.join(PARAM_KEYS)}")
            d.update(data)
        for k in PARAM_KEYS:
            if getattr(self, k) is not None:
                d[k] = getattr(self, k)
        return d

    def stego_params(self):
        """Returns StegoParams, or None when no parameter was given at all."""
        d = self.raw_params()
        if all(v is None for v in d.values()):
            return None
        if missing := [k for k, v in d.items() if v is None]:
            raise ConfigError(f"missing parameter(s): {', '.join(missing)} (use --level, --mode, --upper or --params)")
        return StegoParams(**d)

    def message(self):
        """Returns the payload bytes: inline text as the original argv bytes, or the exact bytes of the message file."""
        if self.text is not None:
            return os.fsencode(self.text)  # original argv bytes, UTF-8 for valid text
        try:
            return self.message_file.read_bytes()
        except OSError as e:
            raise ConfigError(f"cannot read message file {self.message_file}: {e}") from e

    def validate(self):
        """Checks the per-command option invariants."""
        if self.command == "cover":
            if self.text is None and self.message_file is None:
                raise ConfigError("cover needs a message: --text, --text-file or --payload-file")
            if self.output_path is None:
                raise ConfigError("cover needs --out")
            if self.stego_params() is None:
                raise ConfigError("cover needs --level, --mode and --upper (or --params)")
        elif self.command == "uncover":
            if any(v is not None for v in self.raw_params().values()):
                raise ConfigError("uncover reads the parameters from the image, do not pass --level/--mode/--upper")
            if self.output_path is None and not self.as_text:
                raise ConfigError("uncover needs --out or --as-text")
        elif self.command not in COMMANDS:
            raise ConfigError(f"unknown command '{self.command}', expected one of {COMMANDS}")
        return self


def exit_status(func):
    """Decorator @exit_status turning the errors of a run_* command into its documented exit status."""

    @functools.wraps(func)
    def wrapper(config):
        try:
            return func(config.validate())
        except (StegoError, OSError) as e:
            for types, code in EXIT_CODES:
                if isinstance(e, types):
                    LOGGER.error(f"{colorstr('red', 'bold', f'{config.command}:')} {e}")
                    return code
            raise

    return wrapper


@exit_status
def run_cover(config: CommandConfig):
    """Hides the message in the input BMP and writes the stego BMP to `config.output_path`."""
    params = config.stego_params()
    message = config.message()
    image = load_bmp(check_file(config.input_path))
    bits = frame(message)
    available = capacity(image, params)
    with Profile() as dt:
        stego = cover(image, bits, params)
    n = save_bmp(stego, config.output_path)
    if config.save_params:
        yaml_save(config.save_params, params.to_dict())

    print(f"capacity: {bits.length} of {available} bits used")
    LOGGER.info(
        f"{colorstr('cover: ')}{len(message)} bytes into {config.input_path} "
        f"({image.width}x{image.height}, lowerbound {params.lowerbound_intensity}, channels {params.channels}), "
        f"PSNR {psnr(image, stego):.2f} dB, {dt.dt * 1e3:.1f}ms"
    )
    LOGGER.info(f"Stego image saved to {colorstr('bold', config.output_path)} ({n} bytes)")
    return EXIT_OK


@exit_status
def run_uncover(config: CommandConfig):
    """Recovers the message from a stego BMP; writes it to `config.output_path` and/or stdout."""
    stego = load_bmp(check_file(config.input_path))
    with Profile() as dt:
        bits, params = uncover(stego)
        message = deframe(bits)
    if config.output_path:
        config.output_path.write_bytes(message)
        LOGGER.info(f"Message saved to {colorstr('bold', config.output_path)}")
    if config.as_text:
        sys.stdout.buffer.write(message)  # UTF-8 passthrough
        sys.stdout.flush()
    if config.restore:
        save_bmp(restore_brightness(stego, params), config.restore)
        LOGGER.info(f"Brightness-restored image saved to {colorstr('bold', config.restore)}")
    LOGGER.info(
        f"{colorstr('uncover: ')}{len(message)} bytes from {config.input_path} with level={params.brightness_level}, "
        f"mode={params.brightness_mode}, upper={params.upperbound_intensity}, {dt.dt * 1e3:.1f}ms"
    )
    return EXIT_OK


@exit_status
def run_inspect(config: CommandConfig):
    """Prints an AnalysisReport; without explicit parameters, a stego image reports its own embedded ones."""
    image = load_bmp(check_file(config.input_path))
    params, stego = config.stego_params(), False
    if params is None:
        try:
            params, stego = extract_params(image), True
            LOGGER.info(f"{colorstr('inspect: ')}stego image, embedded parameters {params.to_dict()}")
        except StegoError:
            LOGGER.info(f"{colorstr('inspect: ')}no embedded parameters, capacity not computed")
    reference = load_bmp(check_file(config.ref)) if config.ref else None
    report = analyze(image, params, threshold=config.census, reference=reference, stego=stego)
    sys.stdout.write(format_report(report, config.format))
    if config.plot:
        plot_intensity_histogram(image, params, config.plot)
    return EXIT_OK


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with status 1, keeping 2 for BMP format errors."""

    def error(self, message):
        """Prints usage and the message to stderr and exits with EXIT_USAGE."""
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_opt(argv=None):
    """
    Parse command-line arguments for the cover, uncover and inspect commands.

    Args:
        command (str): One of 'cover', 'uncover', 'inspect'.
        --in (str): Input BMP (carrier for cover, stego image for uncover, any BMP for inspect).
        --out (str, optional): Stego BMP for cover, recovered message file for uncover.
        --text, --text-file, --payload-file: Message source for cover, mutually exclusive.
        --level, --mode, --upper (int, optional): brightness_level, brightness_mode, upperbound_intensity.
        --params (str, optional): YAML file with the three parameters; explicit flags override it.
        --census (int, optional): Intensity census threshold for inspect. Defaults to 244.
        --ref (str, optional): Reference BMP for PSNR/MSE in inspect.
        --as-text (bool, optional): Write the recovered message to stdout.
        --restore (str, optional): Write the brightness-restored stego image on uncover.

    Returns:
        argparse.Namespace: Parsed command-line arguments.
    """
    parser = ArgumentParser(description="Brightness-shift LSB steganography for 24-bit BMP images")
    parser.add_argument("command", choices=COMMANDS, help="cover, uncover or inspect")
    parser.add_argument("--in", dest="input", required=True, help="input BMP path")
    parser.add_argument("--out", help="output path: stego BMP (cover) or recovered message (uncover)")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--text", help="inline message, embedded as its command-line bytes")
    source.add_argument("--text-file", help="message file, embedded byte for byte")
    source.add_argument("--payload-file", help="binary payload file, embedded byte for byte")
    parser.add_argument("--level", type=int, help="brightness_level, intensity added after embedding")
    parser.add_argument("--mode", type=int, help="brightness_mode 1..7, channels brightened and carrying data")
    parser.add_argument("--upper", type=int, help="upperbound_intensity 0..255, carriers are bytes below it")
    parser.add_argument("--params", help="params.yaml path, overridden by --level/--mode/--upper")
    parser.add_argument("--save-params", help="write the effective cover parameters to this params.yaml")
    parser.add_argument("--census", type=int, default=244, help="inspect: count bytes above this intensity")
    parser.add_argument("--ref", help="inspect: reference BMP for PSNR/MSE")
    parser.add_argument("--as-text", action="store_true", help="uncover: print the recovered message to stdout")
    parser.add_argument("--restore", help="uncover: save the brightness-restored image to this BMP path")
    parser.add_argument("--plot", help="inspect: save an intensity histogram to this image path")
    parser.add_argument("--format", choices=("text", "yaml"), default="text", help="inspect: report format")
    parser.add_argument("--quiet", action="store_true", help="log errors only")
    opt = parser.parse_args(argv)
    set_logging(verbose=VERBOSE and not opt.quiet)
    print_args(vars(opt))
    return opt


def main(opt):
    """
    Runs the command selected in `opt` and returns its exit status.

    Example:
        ```python
        if __name__ == "__main__":
            opt = parse_opt()
            sys.exit(main(opt))
        ```
    """
    config = CommandConfig.from_opt(opt)
    run = {"cover": run_cover, "uncover": run_uncover, "inspect": run_inspect}[config.command]
    return run(config)


def cli():
    """Console-script entry point, `brightstego cover|uncover|inspect ...`."""
    sys.exit(main(parse_opt()))


if __name__ == "__main__":
    opt = parse_opt()
    sys.exit(main(opt))
