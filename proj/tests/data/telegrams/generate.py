#!/usr/bin/env python3
"""Generate the golden P1 telegram corpus.

Telegrams are constructed per the DSMR P1 companion standard text layout;
expected extraction values (Unix times via the system tz database, CRC
trailers via an independent CRC-16/ARC implementation) are written next to
each telegram. Regenerating rewrites all corpus files deterministically.
"""

import os
from datetime import datetime, timedelta
from zoneinfo import ZoneInfo

HERE = os.path.dirname(os.path.abspath(__file__))
AMS = ZoneInfo("Europe/Amsterdam")
UTC = ZoneInfo("UTC")


def crc16_arc(data: bytes) -> int:
    crc = 0
    for byte in data:
        crc ^= byte
        for _ in range(8):
            crc = (crc >> 1) ^ 0xA001 if crc & 1 else crc >> 1
    return crc


def tst(dt_local: datetime, flag: bool) -> str:
    s = dt_local.strftime("%y%m%d%H%M%S")
    if flag:
        s += "S" if dt_local.dst() else "W"
    return s


def unix(dt_local: datetime) -> int:
    return int(dt_local.astimezone(UTC).timestamp())


def telegram(header, lines, with_crc):
    body = "/" + header + "\r\n\r\n"
    for line in lines:
        body += line + "\r\n"
    body += "!"
    if with_crc:
        body += "%04X" % crc16_arc(body.encode("ascii"))
    body += "\r\n"
    return body


def fmt3(v):
    return "%.3f" % v


def make_modern(version, header, t_local, e=(4167.058, 3248.234, 11.0, 22.0),
                gas=(1234.567, None), gas_channel=1, pad=True):
    """DSMR >= 4.0 telegram: version object, flagged clock, CRC trailer."""
    lines = [
        "1-3:0.2.8(%s)" % version,
        "0-0:1.0.0(%s)" % tst(t_local, True),
        "0-0:96.1.1(4530303435303033383833343439323137)",
    ]
    reg = "%010.3f" if pad else "%.3f"
    lines += [
        "1-0:1.8.1(" + reg % e[0] + "*kWh)",
        "1-0:1.8.2(" + reg % e[1] + "*kWh)",
        "1-0:2.8.1(" + reg % e[2] + "*kWh)",
        "1-0:2.8.2(" + reg % e[3] + "*kWh)",
        "0-0:96.14.0(0002)",
        "1-0:1.7.0(00.424*kW)",
    ]
    expected = [
        ("e_use_lo_cum__kWh", unix(t_local), fmt3(e[0])),
        ("e_use_hi_cum__kWh", unix(t_local), fmt3(e[1])),
        ("e_ret_lo_cum__kWh", unix(t_local), fmt3(e[2])),
        ("e_ret_hi_cum__kWh", unix(t_local), fmt3(e[3])),
    ]
    if gas[0] is not None:
        g_local = gas[1] if gas[1] is not None else t_local
        lines += [
            "0-%d:24.1.0(003)" % gas_channel,
            "0-%d:96.1.0(4730303339303031393336393930363139)" % gas_channel,
            "0-%d:24.2.1(%s)(%09.3f*m3)" % (gas_channel, tst(g_local, True), gas[0]),
        ]
        expected.append(("g_use_cum__m3", unix(g_local), fmt3(gas[0])))
    expected.append(("meter_code_str", unix(t_local), header))
    expected.append(("dsmr_version__0", unix(t_local), "%.1f" % (int(version) / 10.0)))
    return telegram(header, lines, True), expected, unix(t_local)


def make_dsmr30(header, receive_unix, e, gas, gas_local):
    """DSMR 3.0: no version object, no clock object, 24.3.0 gas, no CRC."""
    lines = [
        "0-0:96.1.1(4B384547303034303436333935353037)",
        "1-0:1.8.1(%09.3f*kWh)" % e[0],
        "1-0:1.8.2(%09.3f*kWh)" % e[1],
        "1-0:2.8.1(%09.3f*kWh)" % e[2],
        "1-0:2.8.2(%09.3f*kWh)" % e[3],
        "0-0:96.14.0(0001)",
        "1-0:1.7.0(0001.01*kW)",
        "0-0:96.13.0()",
    ]
    expected = [
        ("e_use_lo_cum__kWh", receive_unix, fmt3(e[0])),
        ("e_use_hi_cum__kWh", receive_unix, fmt3(e[1])),
        ("e_ret_lo_cum__kWh", receive_unix, fmt3(e[2])),
        ("e_ret_hi_cum__kWh", receive_unix, fmt3(e[3])),
    ]
    if gas is not None:
        lines += [
            "0-1:24.1.0(3)",
            "0-1:96.1.0(3238303131303038333036343939)",
            "0-1:24.3.0(%s)(00)(60)(1)(0-1:24.2.1)(m3)" % tst(gas_local, False),
            "(%09.3f)" % gas,
        ]
        expected.append(("g_use_cum__m3", unix(gas_local), fmt3(gas)))
    expected.append(("meter_code_str", receive_unix, header))
    return telegram(header, lines, False), expected, receive_unix


def write(name, raw, expected, header, crc_verdict, receive_unix=None, prev_unix=None):
    with open(os.path.join(HERE, name + ".telegram"), "wb") as f:
        f.write(raw.encode("ascii"))
    with open(os.path.join(HERE, name + ".expected"), "w") as f:
        f.write("header\t%s\n" % header)
        f.write("crc\t%s\n" % crc_verdict)
        if receive_unix is not None:
            f.write("receive_time\t%d\n" % receive_unix)
        if prev_unix is not None:
            f.write("prev_telegram_time\t%d\n" % prev_unix)
        for prop, t, v in expected:
            f.write("measurement\t%s\t%d\t%s\n" % (prop, t, v))


def main():
    hdr5 = "ISK5\\2M550T-1012"
    hdr4 = "KFM5KAIFA-METER"
    hdr3 = "ISk5\\2MT382-1000"

    # --- DSMR 5.0: five telegrams, incl. the autumn repeated hour ---
    t = datetime(2024, 7, 15, 12, 0, 0, tzinfo=AMS)
    raw, exp, _ = make_modern("50", hdr5, t)
    write("dsmr50_01", raw, exp, hdr5, "ok")

    t = datetime(2024, 1, 10, 6, 30, 0, tzinfo=AMS)
    raw, exp, _ = make_modern("50", hdr5, t, e=(1.001, 2.002, 0.0, 0.0), gas=(15223.004, None))
    write("dsmr50_02", raw, exp, hdr5, "ok")

    # first pass through the ambiguous hour (CEST)
    t = datetime(2024, 10, 27, 2, 30, 0, fold=0, tzinfo=AMS)
    raw, exp, _ = make_modern("50", hdr5, t, gas=(777.700, t - timedelta(minutes=5)))
    write("dsmr50_03", raw, exp, hdr5, "ok")

    # second pass through the ambiguous hour (CET)
    t = datetime(2024, 10, 27, 2, 30, 0, fold=1, tzinfo=AMS)
    raw, exp, _ = make_modern("50", hdr5, t, gas=(777.915, t - timedelta(minutes=5)))
    write("dsmr50_04", raw, exp, hdr5, "ok")

    # no gas meter on channel; unpadded registers
    t = datetime(2025, 3, 30, 3, 0, 0, tzinfo=AMS)  # right after the spring jump
    raw, exp, _ = make_modern("50", hdr5, t, gas=(None, None), pad=False)
    write("dsmr50_05", raw, exp, hdr5, "ok")

    # --- DSMR 4.x: five telegrams, hourly gas ---
    for i, (ver, day, hour, minute, gas_min) in enumerate(
        [("42", 20, 9, 10, 0), ("42", 20, 9, 20, 0), ("40", 21, 0, 0, 0),
         ("42", 22, 18, 50, 0), ("40", 23, 23, 59, 0)], start=1):
        t = datetime(2023, 11, day, hour, minute, 30, tzinfo=AMS)
        g = t.replace(minute=gas_min, second=0)
        raw, exp, _ = make_modern(ver, hdr4, t, e=(100.0 + i, 200.0 + i, 1.0, 0.0),
                                  gas=(9000.0 + i * 0.111, g), gas_channel=2 if i == 3 else 1)
        write("dsmr4x_%02d" % i, raw, exp, hdr4, "ok")

    # --- DSMR 3.0: five telegrams, no clock object, two-line gas ---
    base = datetime(2024, 10, 26, 22, 0, 0, tzinfo=AMS)
    for i in range(1, 6):
        recv = base + timedelta(minutes=10 * i)
        gas_local = recv.replace(minute=0, second=0)
        raw, exp, _ = make_dsmr30(hdr3, unix(recv), (5.0 + i, 6.0 + i, 0.0, 0.0),
                                  1000.0 + i, gas_local)
        write("dsmr30_%02d" % i, raw, exp, hdr3, "absent", receive_unix=unix(recv))

    print("corpus written to", HERE)


if __name__ == "__main__":
    main()
