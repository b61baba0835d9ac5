#ifndef TwoWire_h
#define TwoWire_h

// I2C master and slave library over the TWI peripheral.

#define BUFFER_LENGTH 32

class TwoWire {
public:
  TwoWire();
  void begin();
  void begin(unsigned char address);
  void end();
  void setClock(unsigned long clock);
  void beginTransmission(unsigned char address);
  unsigned char endTransmission();
  unsigned char requestFrom(unsigned char address, unsigned char quantity);
  unsigned long write(unsigned char data);
  int available();
  int read();
  int peek();
};

#endif
