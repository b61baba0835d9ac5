#ifndef OneWire_h
#define OneWire_h

// Dallas/Maxim 1-Wire bus master.

class OneWire {
public:
  OneWire(unsigned char pin);
  unsigned char reset();
  void select(const unsigned char rom[8]);
  void skip();
  void write(unsigned char value);
  unsigned char read();
  void write_bit(unsigned char value);
  unsigned char read_bit();
  unsigned char search(unsigned char *newAddr);
  static unsigned char crc8(const unsigned char *addr, unsigned char len);
};

#endif
